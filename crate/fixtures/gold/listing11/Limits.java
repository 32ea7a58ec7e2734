package demo.limits;

public class Limits {

    private static final int COUNT_2 = 2;

    private static final int COUNT_3 = 3;
}
