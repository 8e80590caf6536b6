package csv;

import java.util.ArrayList;
import java.util.List;

public class CsvParser {
  public List<String> parseLine(String line) {
    List<String> fields = new ArrayList<>();
    for (String raw : line.split(",")) {
      fields.add(unquote(raw.trim()));
    }
    return fields;
  }

  String unquote(String field) {
    if (field.length() >= 2 && field.startsWith("\"") && field.endsWith("\"")) {
      return field.substring(1, field.length());
    }
    return field;
  }
}
