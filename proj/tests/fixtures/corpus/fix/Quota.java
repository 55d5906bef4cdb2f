package fix;
public class Quota { // quota holder
    public int limit; // shared cap
} // end
