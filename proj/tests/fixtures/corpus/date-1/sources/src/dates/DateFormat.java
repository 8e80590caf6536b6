package dates;

public class DateFormat {
  public String iso(int year, int month, int day) {
    return String.format("%04d-%02d-%02d", year, month, day);
  }
}
