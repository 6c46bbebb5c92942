//! Rectangular matrices over `KP_K(Lambda)` and the relations built on them.

use crate::algebra::{AlgebraError, KPElement, Kp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<KPElement>,
}

impl KPMatrix {
    pub fn from_rows(rows: Vec<Vec<KPElement>>) -> Result<KPMatrix, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged or empty rows".into()));
        }
        Ok(KPMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn scalar(a: KPElement) -> KPMatrix {
        KPMatrix {
            rows: 1,
            cols: 1,
            entries: vec![a],
        }
    }

    pub fn column(items: Vec<KPElement>) -> KPMatrix {
        KPMatrix::from_rows(items.into_iter().map(|x| vec![x]).collect()).expect("nonempty column")
    }

    pub fn row(items: Vec<KPElement>) -> KPMatrix {
        KPMatrix::from_rows(vec![items]).expect("nonempty row")
    }

    pub fn zeros(kp: &Kp<'_>, rows: usize, cols: usize) -> KPMatrix {
        KPMatrix {
            rows,
            cols,
            entries: vec![kp.zero(); rows * cols],
        }
    }

    pub fn diagonal(kp: &Kp<'_>, items: Vec<KPElement>) -> KPMatrix {
        let n = items.len();
        let mut m = KPMatrix::zeros(kp, n, n);
        for (i, x) in items.into_iter().enumerate() {
            m.entries[i * n + i] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &KPElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &KPElement> {
        self.entries.iter()
    }

    pub fn row_elements(&self, i: usize) -> &[KPElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// `a ⊕ b`, block diagonal.
    pub fn direct_sum(&self, other: &KPMatrix, kp: &Kp<'_>) -> KPMatrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = KPMatrix::zeros(kp, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * c + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.entries[(self.rows + i) * c + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }
}

impl<'g> Kp<'g> {
    pub fn matmul(&self, a: &KPMatrix, b: &KPMatrix) -> Result<KPMatrix, AlgebraError> {
        if a.cols != b.rows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} times {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut entries = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = self.zero();
                for t in 0..a.cols {
                    acc = acc.add(&self.checked_mul(a.get(i, t), b.get(t, j))?);
                }
                entries.push(acc);
            }
        }
        Ok(KPMatrix {
            rows: a.rows,
            cols: b.cols,
            entries,
        })
    }

    pub fn matmul3(&self, a: &KPMatrix, b: &KPMatrix, c: &KPMatrix) -> Result<KPMatrix, AlgebraError> {
        self.matmul(&self.matmul(a, b)?, c)
    }

    pub fn matrix_equals(&self, a: &KPMatrix, b: &KPMatrix) -> bool {
        a.rows == b.rows
            && a.cols == b.cols
            && a.entries.iter().zip(&b.entries).all(|(x, y)| self.equals(x, y))
    }

    /// `a ≾ b` witnessed by `a = x b y`.
    pub fn precsim_verify(
        &self,
        a: &KPMatrix,
        b: &KPMatrix,
        x: &KPMatrix,
        y: &KPMatrix,
    ) -> Result<bool, AlgebraError> {
        let xby = self.matmul3(x, b, y)?;
        if xby.rows != a.rows || xby.cols != a.cols {
            return Err(AlgebraError::Dimension(format!(
                "x b y is {}x{}, a is {}x{}",
                xby.rows, xby.cols, a.rows, a.cols
            )));
        }
        Ok(self.matrix_equals(a, &xby))
    }

    /// `a <= b` as `ab = ba = a`.
    pub fn subidempotent_verify(&self, a: &KPElement, b: &KPElement) -> bool {
        self.is_subidempotent(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Field;
    use crate::kgraph::VertexId;

    #[test]
    fn vertex_is_precsim_itself() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let p = KPMatrix::scalar(kp.vertex(VertexId(0)));
        assert!(kp.precsim_verify(&p, &p, &p, &p).unwrap());
    }

    #[test]
    fn canonical_cuntz_witness() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let (a, b) = (g.parse_path("a").unwrap(), g.parse_path("b").unwrap());
        let sv = kp.vertex(VertexId(0));
        let p = KPMatrix::scalar(sv.clone());
        let pp = p.direct_sum(&p, &kp);
        let padded = p.direct_sum(&KPMatrix::scalar(kp.zero()), &kp);
        let big_a = KPMatrix::from_rows(vec![
            vec![kp.s_star(&a), kp.zero()],
            vec![kp.s_star(&b), kp.zero()],
        ])
        .unwrap();
        let big_b = KPMatrix::from_rows(vec![vec![kp.s(&a), kp.s(&b)], vec![kp.zero(), kp.zero()]]).unwrap();
        assert!(kp.precsim_verify(&pp, &padded, &big_a, &big_b).unwrap());
        let col = KPMatrix::column(vec![kp.s_star(&a), kp.s_star(&b)]);
        let row = KPMatrix::row(vec![kp.s(&a), kp.s(&b)]);
        assert!(kp.precsim_verify(&pp, &p, &col, &row).unwrap());
    }

    #[test]
    fn strict_subidempotent() {
        let g = corpus::e_n(2);
        let kp = Kp::new(&g, Field::Rational);
        let a = g.parse_path("a").unwrap();
        let q = kp.projection(&a);
        let sv = kp.vertex(VertexId(0));
        assert!(kp.subidempotent_verify(&q, &sv));
        assert!(!kp.equals(&q, &sv));
    }

    #[test]
    fn dimension_errors() {
        let g = corpus::e_n(1);
        let kp = Kp::new(&g, Field::Rational);
        let p = KPMatrix::scalar(kp.vertex(VertexId(0)));
        let col = KPMatrix::column(vec![kp.zero(), kp.zero()]);
        assert!(kp.matmul(&col, &col).is_err());
        assert!(kp.precsim_verify(&p, &p, &col, &p).is_err());
        assert!(KPMatrix::from_rows(vec![]).is_err());
    }
}
