/** Row-major dense matrices over Float64Array, sized for small GCN weights. */

export interface Matrix {
  rows: number;
  cols: number;
  data: Float64Array;
}

export function zeros(rows: number, cols: number): Matrix {
  return { rows, cols, data: new Float64Array(rows * cols) };
}

export function ones(rows: number, cols: number): Matrix {
  const m = zeros(rows, cols);
  m.data.fill(1);
  return m;
}

export function fromRows(values: number[][]): Matrix {
  const rows = values.length;
  const cols = rows > 0 ? values[0].length : 0;
  const m = zeros(rows, cols);
  for (let i = 0; i < rows; i++) {
    if (values[i].length !== cols) {
      throw new Error(`ragged matrix: row ${i} has ${values[i].length} entries, expected ${cols}`);
    }
    m.data.set(values[i], i * cols);
  }
  return m;
}

export function toRows(m: Matrix): number[][] {
  const out: number[][] = [];
  for (let i = 0; i < m.rows; i++) {
    out.push(Array.from(m.data.subarray(i * m.cols, (i + 1) * m.cols)));
  }
  return out;
}

export function clone(m: Matrix): Matrix {
  return { rows: m.rows, cols: m.cols, data: m.data.slice() };
}

/** a @ b */
export function matmul(a: Matrix, b: Matrix): Matrix {
  if (a.cols !== b.rows) {
    throw new Error(`matmul shape mismatch: ${a.rows}x${a.cols} @ ${b.rows}x${b.cols}`);
  }
  const out = zeros(a.rows, b.cols);
  for (let i = 0; i < a.rows; i++) {
    const ai = i * a.cols;
    const oi = i * b.cols;
    for (let k = 0; k < a.cols; k++) {
      const aik = a.data[ai + k];
      if (aik === 0) continue;
      const bk = k * b.cols;
      for (let j = 0; j < b.cols; j++) {
        out.data[oi + j] += aik * b.data[bk + j];
      }
    }
  }
  return out;
}

/** a^T @ b without materializing the transpose */
export function matmulTransposeA(a: Matrix, b: Matrix): Matrix {
  if (a.rows !== b.rows) {
    throw new Error(`matmulTransposeA shape mismatch: ${a.rows}x${a.cols}, ${b.rows}x${b.cols}`);
  }
  const out = zeros(a.cols, b.cols);
  for (let k = 0; k < a.rows; k++) {
    const ak = k * a.cols;
    const bk = k * b.cols;
    for (let i = 0; i < a.cols; i++) {
      const aki = a.data[ak + i];
      if (aki === 0) continue;
      const oi = i * b.cols;
      for (let j = 0; j < b.cols; j++) {
        out.data[oi + j] += aki * b.data[bk + j];
      }
    }
  }
  return out;
}

/** a @ b^T without materializing the transpose */
export function matmulTransposeB(a: Matrix, b: Matrix): Matrix {
  if (a.cols !== b.cols) {
    throw new Error(`matmulTransposeB shape mismatch: ${a.rows}x${a.cols}, ${b.rows}x${b.cols}`);
  }
  const out = zeros(a.rows, b.rows);
  for (let i = 0; i < a.rows; i++) {
    const ai = i * a.cols;
    const oi = i * b.rows;
    for (let j = 0; j < b.rows; j++) {
      const bj = j * b.cols;
      let acc = 0;
      for (let k = 0; k < a.cols; k++) {
        acc += a.data[ai + k] * b.data[bj + k];
      }
      out.data[oi + j] = acc;
    }
  }
  return out;
}

export function addInPlace(target: Matrix, other: Matrix): void {
  if (target.rows !== other.rows || target.cols !== other.cols) {
    throw new Error("addInPlace shape mismatch");
  }
  for (let i = 0; i < target.data.length; i++) {
    target.data[i] += other.data[i];
  }
}

export function scaleInPlace(target: Matrix, factor: number): void {
  for (let i = 0; i < target.data.length; i++) {
    target.data[i] *= factor;
  }
}
