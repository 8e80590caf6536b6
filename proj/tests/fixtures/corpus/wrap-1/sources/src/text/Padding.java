package text;

public class Padding {
  public String padLeft(String text, int width) {
    StringBuilder out = new StringBuilder();
    while (out.length() + text.length() < width) {
      out.append(' ');
    }
    return out.append(text).toString();
  }
}
