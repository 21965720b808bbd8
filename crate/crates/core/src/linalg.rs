//! Exact Gaussian elimination over a [`Field`].

use crate::exactfield::Field;

fn support_from<F: Field>(field: &F, row: &[F::Elem], start: usize) -> usize {
    row[start..].iter().filter(|x| !field.is_zero(x)).count()
}

/// Brings `rows` to row echelon form in place, with every pivot equal to 1.
/// Returns the pivot columns; the first `pivots.len()` rows are the
/// nonzero ones.
pub fn row_echelon<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let sparse = field.prefers_sparse_pivots();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let candidate = if sparse {
            (rank..rows.len()).filter(|&r| !field.is_zero(&rows[r][c])).min_by_key(|&r| support_from(field, &rows[r], c))
        } else {
            (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][c]))
        };
        let Some(p) = candidate else { continue };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][c]).expect("pivot is nonzero");
        field.scale_slice(&mut rows[rank][c..], &inv);
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank][c..];
        for row in bottom.iter_mut() {
            if !field.is_zero(&row[c]) {
                let factor = row[c].clone();
                field.sub_scaled(&mut row[c..], &factor, pivot_row);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> usize {
    row_echelon(field, &mut rows, ncols).len()
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows. The basis is
/// the reduced one: each vector has a 1 in its own free column and 0 in the
/// other free columns, so it does not depend on the elimination order.
pub fn kernel<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let pivots = row_echelon(field, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![field.zero(); ncols];
        x[free] = field.one();
        for (i, &p) in pivots.iter().enumerate().rev() {
            if p > free {
                continue;
            }
            let row = &rows[i];
            let mut acc = field.zero();
            for j in (p + 1)..ncols {
                if !field.is_zero(&x[j]) && !field.is_zero(&row[j]) {
                    acc = field.add(&acc, &field.mul(&row[j], &x[j]));
                }
            }
            x[p] = field.neg(&acc);
        }
        out.push(x);
    }
    out
}

/// Incrementally built row space, kept in semi-echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        RowSpace { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The echelon basis, one pivot of 1 per row.
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !self.field.is_zero(&v[p]) {
                let factor = v[p].clone();
                self.field.sub_scaled(&mut v[p..], &factor, &row[p..]);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether it enlarged the space.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !self.field.is_zero(x)) else {
            return false;
        };
        let inv = self.field.inv(&r[p]).expect("pivot is nonzero");
        self.field.scale_slice(&mut r[p..], &inv);
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Inserts many vectors at once via a single elimination; cheaper than
    /// repeated [`RowSpace::insert`] for large batches into an empty space.
    pub fn extend_batch(&mut self, vectors: Vec<Vec<F::Elem>>) {
        if self.rows.is_empty() {
            let mut rows = vectors;
            let pivots = row_echelon(&self.field, &mut rows, self.ncols);
            rows.truncate(pivots.len());
            self.rows = rows;
            self.pivots = pivots;
        } else {
            for v in vectors {
                self.insert(v);
            }
        }
    }
}

/// 3×3 matrices with entries in a field, stored row-major.
pub type Mat3<E> = [[E; 3]; 3];

pub fn mat3_identity<F: Field>(field: &F) -> Mat3<F::Elem> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { field.one() } else { field.zero() }))
}

pub fn mat3_from_i64<F: Field>(field: &F, m: [[i64; 3]; 3]) -> Mat3<F::Elem> {
    std::array::from_fn(|i| std::array::from_fn(|j| field.from_i64(m[i][j])))
}

pub fn mat3_mul<F: Field>(field: &F, a: &Mat3<F::Elem>, b: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = field.zero();
            for k in 0..3 {
                if !field.is_zero(&a[i][k]) && !field.is_zero(&b[k][j]) {
                    acc = field.add(&acc, &field.mul(&a[i][k], &b[k][j]));
                }
            }
            acc
        })
    })
}

pub fn mat3_apply<F: Field>(field: &F, m: &Mat3<F::Elem>, v: &[F::Elem; 3]) -> [F::Elem; 3] {
    std::array::from_fn(|i| {
        let mut acc = field.zero();
        for k in 0..3 {
            if !field.is_zero(&m[i][k]) && !field.is_zero(&v[k]) {
                acc = field.add(&acc, &field.mul(&m[i][k], &v[k]));
            }
        }
        acc
    })
}

pub fn mat3_transpose<E: Clone>(m: &Mat3<E>) -> Mat3<E> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mat3_scale<F: Field>(field: &F, m: &Mat3<F::Elem>, c: &F::Elem) -> Mat3<F::Elem> {
    std::array::from_fn(|i| std::array::from_fn(|j| field.mul(&m[i][j], c)))
}

pub fn mat3_det<F: Field>(field: &F, m: &Mat3<F::Elem>) -> F::Elem {
    let minor = |a: usize, b: usize| field.sub(&field.mul(&m[1][a], &m[2][b]), &field.mul(&m[1][b], &m[2][a]));
    let t0 = field.mul(&m[0][0], &minor(1, 2));
    let t1 = field.mul(&m[0][1], &minor(0, 2));
    let t2 = field.mul(&m[0][2], &minor(0, 1));
    field.add(&field.sub(&t0, &t1), &t2)
}

/// Scales `m` so that its first nonzero entry (row-major) is 1; equal
/// outputs mean the matrices agree up to a scalar.
pub fn mat3_projective_normal<F: Field>(field: &F, m: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    let lead = m.iter().flatten().find(|x| !field.is_zero(x)).expect("nonzero matrix");
    let inv = field.inv(lead).expect("lead is nonzero");
    mat3_scale(field, m, &inv)
}
