package graph;

import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class Graph {
  private final Map<Integer, List<Integer>> adjacency = new HashMap<>();

  public void addEdge(int from, int to) {
    adjacency.computeIfAbsent(from, k -> new ArrayList<>()).add(to);
  }

  public List<Integer> neighbors(int node) {
    return adjacency.getOrDefault(node, new ArrayList<>());
  }

  public int degree(int node) {
    return neighbors(node).size() + 1;
  }
}
