package stack;

public class StackPrinter {
  public String describe(BoundedStack stack) {
    String text = "top=" + stack.peek();
    return text;
  }
}
