package demo.digest;

public class Digests {

    private String calcDigest(String first, String... args) {
        StringBuilder stringBuilder = new StringBuilder(first);
        return stringBuilder.toString();
    }

    private static String bytesToHexString(byte[] bytes) {
        StringBuilder sb = new StringBuilder();
        return sb.toString();
    }
}
