package fix;

public class Coupler {
    public Client maker() {
        return new Client();
    }
}
