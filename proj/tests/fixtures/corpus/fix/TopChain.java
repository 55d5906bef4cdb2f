package fix;

public class TopChain {
    protected int depth;
}
