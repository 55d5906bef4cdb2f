package fix;

@Notes("tagged")
public class Tagged {
    public int marker;
}
