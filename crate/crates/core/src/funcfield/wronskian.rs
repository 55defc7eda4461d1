use super::RationalFunction;
use crate::error::{Error, Result};
use crate::mpoly::MPoly;

/// Wronskian `det(d^i f_j / dt^i)` of functions in a single parameter `t`.
///
/// Column `j` is scaled by `den(f_j)^n` so every entry is a polynomial; the
/// determinant is then taken by fraction-free Bareiss elimination and the
/// scaling is divided out once at the end.
pub fn wronskian(fs: &[RationalFunction]) -> Result<RationalFunction> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if fs.iter().any(|f| f.nparams() != 1) {
        return Err(Error::Unsupported(
            "the Wronskian needs functions of exactly one parameter".into(),
        ));
    }
    let mut scale = MPoly::one(1);
    let mut columns: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    for f in fs {
        let l = f.denominator().pow(n as u32);
        let mut col = Vec::with_capacity(n);
        let mut d = f.clone();
        for _ in 0..n {
            let entry = d
                .numerator()
                .mul(&l)
                .div_exact(d.denominator())
                .expect("derivative denominators divide den^n");
            col.push(entry);
            d = d.derive(0);
        }
        scale = scale.mul(&l);
        columns.push(col);
    }
    let mut m: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
        .collect();
    let det = bareiss(&mut m);
    RationalFunction::new(det, scale)
}

/// Fraction-free determinant; consumes the matrix.
pub(crate) fn bareiss(m: &mut [Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = MPoly::one(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return MPoly::zero(1),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
