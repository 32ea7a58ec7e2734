package demo.db;

public class DBConnectionPool {

    public static synchronized boolean shrinkConnectionPoolSize() {
        DBConnection conn = null;
        return conn == null;
    }

    private static synchronized int getFreeDBConnectionNumber() {
        DBConnection db = null;
        return db == null ? 0 : 1;
    }
}
