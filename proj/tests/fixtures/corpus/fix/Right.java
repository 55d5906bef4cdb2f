package fix;

public interface Right extends Base {
    int rightWeight();
}
