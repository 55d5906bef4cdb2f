package fix;

public class Outer {
    public static class Middle {
        public class Inner {
            public int depth3;
        }

        public int depth2;
    }

    public Middle spawn() {
        return new Middle();
    }
}
