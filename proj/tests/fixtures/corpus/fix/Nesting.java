package fix;

public class Nesting {
    public int[] grid;

    public int scan(int n) {
        int total = 0;
        for (int i = 0; i < n; i++) {
            if (grid[i] > 0) {
                while (total < 100) {
                    total += grid[i];
                }
            }
        }
        return total;
    }

    public String describe(int v) {
        if (v == 0) {
            return "zero";
        } else if (v < 10) {
            return "small";
        } else if (v < 100) {
            return "medium";
        } else {
            return "large";
        }
    }

    static class Counter {
        public int hits;

        public void tick() {
            hits++;
        }
    }
}
