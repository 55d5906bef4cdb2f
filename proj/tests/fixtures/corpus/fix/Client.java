package fix;

public class Client {
    private Service service = new Service();

    public void refresh() {
        service.ping();
        service.ping();
        service.ping(3);
    }
}
