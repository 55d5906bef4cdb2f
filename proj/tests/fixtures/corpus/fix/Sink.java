package fix;

public class Sink {
    public Diamond d;
    public Tokens t;
    public Riddle r;

    public int sum() {
        return d.id() + r.grade(1, true);
    }
}
