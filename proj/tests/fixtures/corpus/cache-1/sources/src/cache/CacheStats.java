package cache;

public class CacheStats {
  private int hits;
  private int misses;

  public void hit() {
    hits++;
  }

  public void miss() {
    misses++;
  }

  public double hitRate() {
    int total = hits + misses;
    return total == 0 ? 0.0 : (double) hits / total;
  }
}
