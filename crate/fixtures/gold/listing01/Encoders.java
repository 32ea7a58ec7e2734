package demo.codec;

import java.io.OutputStreamWriter;

public class Encoders {

    void encodeValue(DataBuffer dataBuffer, Charset charset) {
        final OutputStreamWriter writer = new OutputStreamWriter(dataBuffer.asOutputStream(), charset);
        writer.flush();
    }

    String toJsonText(Object value) {
        final FastString writer = new FastStringWriter(200);
        return writer.toString();
    }
}
