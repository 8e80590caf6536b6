package math;

public class Matrix {
  private final double[][] cells;

  public Matrix(int rows, int cols) {
    cells = new double[rows][cols];
  }

  public int rows() {
    return cells.length;
  }

  public int cols() {
    return cells[0].length;
  }

  public void set(int row, int col, double value) {
    cells[row][col] = value;
  }

  public double get(int row, int col) {
    return cells[row][col];
  }

  public Matrix transpose() {
    Matrix result = new Matrix(cols(), rows());
    for (int r = 0; r < rows(); r++) {
      for (int c = 0; c < cols(); c++) {
        result.set(r, c, get(c, r));
      }
    }
    return result;
  }
}
