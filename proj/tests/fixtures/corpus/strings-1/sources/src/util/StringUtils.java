package util;

public class StringUtils {
  public static String reverse(String s) {
    return new StringBuilder(s).reverse().toString();
  }

  public static boolean isPalindrome(String s) {
    String cleaned = s.toLowerCase();
    return cleaned.equals(reverse(s));
  }
}
