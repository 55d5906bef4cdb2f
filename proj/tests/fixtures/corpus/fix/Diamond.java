package fix;

/** Joins both branches. */
public class Diamond implements Left, Right {
    public int weight;

    public int id() {
        return weight;
    }

    public int leftWeight() {
        return weight + 1;
    }

    public int rightWeight() {
        return weight + 2;
    }
}
