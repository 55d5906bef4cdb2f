package fix;

public interface Left extends Base {
    int leftWeight();
}
