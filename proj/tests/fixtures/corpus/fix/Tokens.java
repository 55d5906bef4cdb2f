package fix;

public enum Tokens implements Base {
    WORD,
    NUMBER,
    SPACE;

    public int id() {
        return ordinal();
    }
}
