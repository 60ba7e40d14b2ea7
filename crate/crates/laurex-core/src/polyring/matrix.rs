use alloc::vec::Vec;

use super::field::Field;
use super::poly::{Homogeneity, MultiPoly};
use super::presentation::WeightedRingSpec;
use super::PolyError;

/// A matrix of homogeneous polynomials between graded free modules.
/// Entry `(i, j)` is zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`; columns are elements of the free
/// module with generator degrees `row_degrees`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMatrix<F: Field> {
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    entries: Vec<MultiPoly<F>>, // row-major
}

impl<F: Field> GradedMatrix<F> {
    pub fn new(
        spec: &WeightedRingSpec,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        rows: Vec<Vec<MultiPoly<F>>>,
    ) -> Result<Self, PolyError> {
        if rows.len() != row_degrees.len() || rows.iter().any(|r| r.len() != col_degrees.len()) {
            return Err(PolyError::ShapeMismatch);
        }
        let mut entries = Vec::with_capacity(row_degrees.len() * col_degrees.len());
        for r in rows {
            entries.extend(r);
        }
        let m = GradedMatrix {
            row_degrees,
            col_degrees,
            entries,
        };
        m.validate(spec)?;
        Ok(m)
    }

    fn validate(&self, spec: &WeightedRingSpec) -> Result<(), PolyError> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = self.col_degrees[j] - self.row_degrees[i];
                match super::weighted_degree(e, spec) {
                    Ok(Homogeneity::Homogeneous(d)) if d == want => {}
                    _ => return Err(PolyError::InhomogeneousEntry { row: i, col: j }),
                }
            }
        }
        Ok(())
    }

    /// A matrix with no columns: presents a free module.
    pub fn zero_columns(row_degrees: Vec<i64>) -> Self {
        GradedMatrix {
            row_degrees,
            col_degrees: Vec::new(),
            entries: Vec::new(),
        }
    }

    /// Trusted constructor for internally computed data; callers guarantee
    /// homogeneity.
    pub(crate) fn from_parts(
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        entries: Vec<MultiPoly<F>>,
    ) -> Self {
        debug_assert_eq!(entries.len(), row_degrees.len() * col_degrees.len());
        GradedMatrix {
            row_degrees,
            col_degrees,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.cols() + j]
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly<F>> {
        (0..self.rows()).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// First entry that is a nonzero constant, in row-major order.
    pub fn find_unit_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.entry(i, j).as_constant().is_some() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True when no entry is a nonzero constant: the matrix of a minimal
    /// presentation or differential.
    pub fn is_minimal(&self) -> bool {
        self.find_unit_entry().is_none()
    }

    /// Matrix product `self * other` (composition of the maps they present).
    pub fn compose(&self, other: &Self) -> Result<Self, PolyError> {
        if self.col_degrees != other.row_degrees {
            return Err(PolyError::ShapeMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows() * other.cols());
        for i in 0..self.rows() {
            for j in 0..other.cols() {
                let mut acc = MultiPoly::zero();
                for k in 0..self.cols() {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(GradedMatrix {
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
            entries,
        })
    }

    /// Shift every row and column degree by `a`.
    pub fn twist_all(&self, a: i64) -> Self {
        GradedMatrix {
            row_degrees: self.row_degrees.iter().map(|d| d + a).collect(),
            col_degrees: self.col_degrees.iter().map(|d| d + a).collect(),
            entries: self.entries.clone(),
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut row_degrees = self.row_degrees.clone();
        row_degrees.extend_from_slice(&other.row_degrees);
        let mut col_degrees = self.col_degrees.clone();
        col_degrees.extend_from_slice(&other.col_degrees);
        let rows = row_degrees.len();
        let cols = col_degrees.len();
        let mut entries = alloc::vec![MultiPoly::zero(); rows * cols];
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                entries[i * cols + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.rows() {
            for j in 0..other.cols() {
                entries[(self.rows() + i) * cols + (self.cols() + j)] = other.entry(i, j).clone();
            }
        }
        GradedMatrix {
            row_degrees,
            col_degrees,
            entries,
        }
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        GradedMatrix {
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn spec4() -> WeightedRingSpec {
        WeightedRingSpec::with_unit_weights(&["x", "y", "u", "v"]).unwrap()
    }

    fn poly(terms: &[(&[u32], i64)]) -> MultiPoly<Q> {
        MultiPoly::from_int_terms(terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn homogeneity_enforced() {
        let spec = spec4();
        let u = poly(&[(&[0, 0, 1, 0], 1)]);
        let v = poly(&[(&[0, 0, 0, 1], 1)]);
        let m = GradedMatrix::new(&spec, alloc::vec![0], alloc::vec![1, 1], alloc::vec![alloc::vec![u.clone(), v]]);
        assert!(m.is_ok());

        let bad = GradedMatrix::new(&spec, alloc::vec![0], alloc::vec![2], alloc::vec![alloc::vec![u]]);
        assert!(matches!(bad, Err(PolyError::InhomogeneousEntry { row: 0, col: 0 })));
    }

    #[test]
    fn composition_is_degree_compatible() {
        let spec = spec4();
        // d1 = (u, v): R^2(-1) -> R, d2 = matrix factorization column shape
        let u = poly(&[(&[0, 0, 1, 0], 1)]);
        let v = poly(&[(&[0, 0, 0, 1], 1)]);
        let x = poly(&[(&[1, 0, 0, 0], 1)]);
        let y = poly(&[(&[0, 1, 0, 0], 1)]);
        let d1 = GradedMatrix::new(&spec, alloc::vec![0], alloc::vec![1, 1], alloc::vec![alloc::vec![u.clone(), v.clone()]]).unwrap();
        let d2 = GradedMatrix::new(
            &spec,
            alloc::vec![1, 1],
            alloc::vec![2, 2],
            alloc::vec![
                alloc::vec![v.clone(), y.neg()],
                alloc::vec![u.neg(), x.clone()],
            ],
        )
        .unwrap();
        let c = d1.compose(&d2).unwrap();
        // uv - vu = 0 and -uy + vx = xv - yu (the hypersurface equation)
        assert!(c.entry(0, 0).is_zero());
        assert_eq!(
            *c.entry(0, 1),
            poly(&[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)])
        );
        // the composite validates as a graded matrix in its own right
        let c_rows: Vec<Vec<MultiPoly<Q>>> = (0..c.rows())
            .map(|i| (0..c.cols()).map(|j| c.entry(i, j).clone()).collect())
            .collect();
        assert!(GradedMatrix::new(
            &spec,
            c.row_degrees().to_vec(),
            c.col_degrees().to_vec(),
            c_rows
        )
        .is_ok());
    }

    #[test]
    fn unit_detection_and_direct_sum() {
        let spec = spec4();
        let one = poly(&[(&[0, 0, 0, 0], 3)]);
        let m = GradedMatrix::new(&spec, alloc::vec![1], alloc::vec![1], alloc::vec![alloc::vec![one]]).unwrap();
        assert_eq!(m.find_unit_entry(), Some((0, 0)));
        assert!(!m.is_minimal());

        let u = poly(&[(&[0, 0, 1, 0], 1)]);
        let n = GradedMatrix::new(&spec, alloc::vec![0], alloc::vec![1], alloc::vec![alloc::vec![u]]).unwrap();
        assert!(n.is_minimal());

        let s = m.direct_sum(&n);
        assert_eq!(s.rows(), 2);
        assert_eq!(s.cols(), 2);
        assert!(s.entry(0, 1).is_zero());
        assert!(s.entry(1, 0).is_zero());
    }
}
