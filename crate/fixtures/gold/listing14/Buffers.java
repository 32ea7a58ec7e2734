package demo.io;

public class Buffers {

    int fill(InputStream in) throws IOException {
        byte[] b = new byte[1024];
        return in.read(b);
    }

    String describe(Object value) {
        StringBuffer b = new StringBuffer();
        b.append(value);
        return b.toString();
    }
}
