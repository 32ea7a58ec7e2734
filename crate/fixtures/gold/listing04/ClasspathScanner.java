package demo.scan;

import java.io.File;

public class ClasspathScanner {

    void scan(File[] classes, File[] dirs) {
        if (classes != null) {
            for (File child : classes) {
                System.out.println(child);
            }
        }
        if (dirs != null) {
            for (File child : dirs) {
                System.out.println(child);
            }
        }
    }
}
