package fixtures;

/**
 * A draggable widget.
 */
public class Widget {
    private String label;
    private int width;

    public Widget(String label) {
        this.label = label;
        this.width = 10;
    }

    // Accessor for the label.
    public String getLabel() {
        return label;
    }

    public void resize(int w) {
        if (w > 0) {
            width = w; // clamp later
        }
    }

    public Runnable refresher() {
        return new Runnable() {
            @Override
            public void run() {
                width = width + 1;
            }
        };
    }

    public int area() {
        return width * width;
    }

    // Last line of the class body follows.
}
