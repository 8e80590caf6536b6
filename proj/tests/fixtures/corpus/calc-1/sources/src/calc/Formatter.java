package calc;

public class Formatter {
  public String format(int value) {
    StringBuilder out = new StringBuilder();
    if (value < 0) {
      out.append('-');
      value = -value;
    }
    out.append(value);
    return out.toString();
  }
}
