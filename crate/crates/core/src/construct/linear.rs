//! Matrix groups over small fields, realised as permutation groups on
//! vectors or projective points. Vectors are rows and act by `v -> vM`, so
//! the permutation of a product `AB` is "A first, then B".

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::finfield::{field_of_order, Elem, FieldSpec};
use crate::perm::{Permutation, StrongGenSet};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Matrix {
    n: usize,
    a: Vec<Elem>,
}

impl Matrix {
    pub(crate) fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Matrix { n, a }
    }

    pub(crate) fn from_rows(rows: &[&[Elem]]) -> Self {
        let n = rows.len();
        Matrix {
            n,
            a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    fn get(&self, i: usize, j: usize) -> Elem {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.a[i * self.n + j] = x;
    }

    fn mul(&self, f: &FieldSpec, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix {
            n,
            a: vec![0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// `M^bar-transpose` under the field involution `x -> x^q0`.
    fn conj_transpose(&self, f: &FieldSpec) -> Matrix {
        let n = self.n;
        let mut out = Matrix {
            n,
            a: vec![0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                out.set(
                    j,
                    i,
                    f.conjugate(self.get(i, j)).expect("quadratic extension"),
                );
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn det(&self, f: &FieldSpec) -> Elem {
        // Gaussian elimination
        let n = self.n;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    let t = m.get(p, j);
                    m.set(p, j, m.get(c, j));
                    m.set(c, j, t);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    fn apply(&self, f: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
        (0..self.n)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(0, |s, (i, &x)| f.add(s, f.mul(x, self.get(i, j))))
            })
            .collect()
    }
}

/// Points of a linear action: either all nonzero vectors or the projective
/// points (vectors scaled so the first nonzero entry is 1), possibly
/// restricted to a subset.
pub(crate) struct Domain {
    points: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, usize>,
    projective: bool,
}

fn normalise(f: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    let inv = f.inv(lead).expect("nonzero");
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

fn all_vectors(f: &FieldSpec, n: usize) -> Vec<Vec<Elem>> {
    let q = f.size();
    let total = (q as usize).pow(n as u32);
    (1..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = (code % q as usize) as Elem;
                    code /= q as usize;
                    x
                })
                .collect()
        })
        .collect()
}

impl Domain {
    pub(crate) fn vectors(f: &FieldSpec, n: usize) -> Self {
        Self::from_points(all_vectors(f, n), false)
    }

    pub(crate) fn projective(f: &FieldSpec, n: usize, keep: impl Fn(&[Elem]) -> bool) -> Self {
        let mut points: Vec<Vec<Elem>> = all_vectors(f, n)
            .into_iter()
            .filter(|v| normalise(f, v) == *v && keep(v))
            .collect();
        points.sort();
        Self::from_points(points, true)
    }

    fn from_points(points: Vec<Vec<Elem>>, projective: bool) -> Self {
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Domain {
            points,
            index,
            projective,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    pub(crate) fn permutation(&self, f: &FieldSpec, m: &Matrix) -> Result<Permutation> {
        let images = self
            .points
            .iter()
            .map(|v| {
                let w = m.apply(f, v);
                let w = if self.projective { normalise(f, &w) } else { w };
                self.index
                    .get(&w)
                    .map(|&i| i as u32)
                    .ok_or_else(|| Error::param("matrix does not preserve the point set"))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }
}

/// Adds candidates to a stabilizer chain, in order, until the group reaches
/// `order`. Returns the candidates that enlarged the group.
pub(crate) fn generate_until(
    degree: usize,
    candidates: impl IntoIterator<Item = Permutation>,
    order: u64,
    what: &str,
) -> Result<Vec<Permutation>> {
    let mut sgs = StrongGenSet::new(degree, &[]);
    let mut gens = Vec::new();
    for c in candidates {
        if sgs.order_u64() == Some(order) {
            break;
        }
        if sgs.extend(&c) {
            gens.push(c);
        }
    }
    if sgs.order_u64() != Some(order) {
        return Err(Error::param(format!(
            "{what}: generators reach order {} instead of {order}",
            sgs.order()
        )));
    }
    Ok(gens)
}

fn elementary(n: usize, i: usize, j: usize, a: Elem) -> Matrix {
    let mut m = Matrix::identity(n);
    m.set(i, j, a);
    m
}

fn diag(entries: &[Elem]) -> Matrix {
    let n = entries.len();
    let mut m = Matrix::identity(n);
    for (i, &x) in entries.iter().enumerate() {
        m.set(i, i, x);
    }
    m
}

/// Generators of SL(2,q): `[[1,1],[0,1]]`, `[[1,w],[0,1]]`, `[[0,1],[-1,0]]`
/// and `diag(w, w^-1)` for the primitive element `w`.
fn sl2_matrices(f: &FieldSpec) -> Vec<Matrix> {
    let w = f.primitive();
    let winv = f.inv(w).expect("nonzero");
    let minus_one = f.neg(1);
    vec![
        elementary(2, 0, 1, 1),
        elementary(2, 0, 1, w),
        Matrix::from_rows(&[&[0, 1], &[minus_one, 0]]),
        diag(&[w, winv]),
    ]
}

pub(crate) fn sl2_order(q: u64) -> u64 {
    q * (q - 1) * (q + 1)
}

pub(crate) fn psl2_order(q: u64) -> u64 {
    sl2_order(q) / gcd(2, q - 1)
}

/// `PSL(2,q)` on the `q+1` points of the projective line.
pub(crate) fn psl2(q: u64) -> Result<Vec<Permutation>> {
    let f = field_of_order(q)?;
    let dom = Domain::projective(&f, 2, |_| true);
    let mats = sl2_matrices(&f);
    let perms = mats
        .iter()
        .map(|m| dom.permutation(&f, m))
        .collect::<Result<Vec<_>>>()?;
    generate_until(dom.len(), perms, psl2_order(q), "PSL(2,q)")
}

/// `PGL(2,q)`: PSL(2,q) together with `diag(w, 1)`.
pub(crate) fn pgl2(q: u64) -> Result<Vec<Permutation>> {
    let f = field_of_order(q)?;
    let dom = Domain::projective(&f, 2, |_| true);
    let mut mats = sl2_matrices(&f);
    mats.push(diag(&[f.primitive(), 1]));
    let perms = mats
        .iter()
        .map(|m| dom.permutation(&f, m))
        .collect::<Result<Vec<_>>>()?;
    generate_until(dom.len(), perms, sl2_order(q), "PGL(2,q)")
}

/// `SL(2,q)` on the `q^2 - 1` nonzero vectors. Also returns `-I` for odd `q`.
pub(crate) fn sl2(q: u64) -> Result<(Vec<Permutation>, Option<Permutation>)> {
    let f = field_of_order(q)?;
    let dom = Domain::vectors(&f, 2);
    let perms = sl2_matrices(&f)
        .iter()
        .map(|m| dom.permutation(&f, m))
        .collect::<Result<Vec<_>>>()?;
    let gens = generate_until(dom.len(), perms, sl2_order(q), "SL(2,q)")?;
    let centre = if q % 2 == 1 {
        let m1 = f.neg(1);
        Some(dom.permutation(&f, &diag(&[m1, m1]))?)
    } else {
        None
    };
    Ok((gens, centre))
}

pub(crate) fn psl3_order(q: u64) -> u64 {
    q.pow(3) * (q * q - 1) * (q.pow(3) - 1) / gcd(3, q - 1)
}

/// `PSL(3,q)` on the projective plane, from elementary transvections
/// `I + a E_ij` with `a` running over `1, w, ..., w^(k-1)`.
pub(crate) fn psl3(q: u64) -> Result<Vec<Permutation>> {
    let f = field_of_order(q)?;
    let dom = Domain::projective(&f, 3, |_| true);
    let mut perms = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for t in 0..f.extension_degree() as u64 {
                perms.push(dom.permutation(&f, &elementary(3, i, j, f.exp(t)))?);
            }
        }
    }
    generate_until(dom.len(), perms, psl3_order(q), "PSL(3,q)")
}

pub(crate) fn psu3_order(q: u64) -> u64 {
    q.pow(3) * (q * q - 1) * (q.pow(3) + 1) / gcd(3, q + 1)
}

/// `PSU(3,q)` on the `q^3 + 1` isotropic points of the Hermitian form
/// `x1 y3^q + x2 y2^q + x3 y1^q` over `GF(q^2)`.
///
/// The generators are picked from the unitriangular isometries (upper and
/// lower), shuffled with a fixed seed, until the order is reached.
pub(crate) fn psu3(q: u64) -> Result<Vec<Permutation>> {
    let f = field_of_order(q * q)?;
    let form = Matrix::from_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
    let hermitian = |v: &[Elem]| {
        let mut s = 0;
        for i in 0..3 {
            s = f.add(s, f.mul(v[i], f.conjugate(v[2 - i]).unwrap()));
        }
        s
    };
    let dom = Domain::projective(&f, 3, |v| hermitian(v) == 0);
    if dom.len() as u64 != q.pow(3) + 1 {
        return Err(Error::param("wrong number of isotropic points"));
    }
    let mut isometries = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let upper = Matrix::from_rows(&[&[1, a, b], &[0, 1, c], &[0, 0, 1]]);
                if upper.mul(&f, &form).mul(&f, &upper.conj_transpose(&f)) == form {
                    let lower = Matrix::from_rows(&[&[1, 0, 0], &[a, 1, 0], &[b, c, 1]]);
                    isometries.push(upper);
                    isometries.push(lower);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5053_5533);
    isometries.shuffle(&mut rng);
    let perms = isometries
        .iter()
        .filter(|m| **m != Matrix::identity(3))
        .map(|m| dom.permutation(&f, m))
        .collect::<Result<Vec<_>>>()?;
    generate_until(dom.len(), perms, psu3_order(q), "PSU(3,q)")
}

pub(crate) fn psp4_order(q: u64) -> u64 {
    q.pow(4) * (q * q - 1) * (q.pow(4) - 1) / gcd(2, q - 1)
}

/// `PSp(4,q)` on the projective points of `GF(q)^4` with the alternating form
/// `x1 y3 - x3 y1 + x2 y4 - x4 y2`, from symplectic transvections
/// `x -> x + B(x,v) v`.
pub(crate) fn psp4(q: u64) -> Result<Vec<Permutation>> {
    let f = field_of_order(q)?;
    let dom = Domain::projective(&f, 4, |_| true);
    let form = |x: &[Elem], y: &[Elem]| {
        let a = f.sub(f.mul(x[0], y[2]), f.mul(x[2], y[0]));
        let b = f.sub(f.mul(x[1], y[3]), f.mul(x[3], y[1]));
        f.add(a, b)
    };
    let mut perms = Vec::new();
    for v in all_vectors(&f, 4) {
        if normalise(&f, &v) != v {
            continue;
        }
        // matrix of x -> x + B(x,v) v: row i is e_i + B(e_i, v) v
        let mut m = Matrix::identity(4);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            let c = form(&e, &v);
            for j in 0..4 {
                m.set(i, j, f.add(m.get(i, j), f.mul(c, v[j])));
            }
        }
        perms.push(dom.permutation(&f, &m)?);
    }
    generate_until(dom.len(), perms, psp4_order(q), "PSp(4,q)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::field;

    #[test]
    fn determinant() {
        let f = field(5, 1).unwrap();
        let m = Matrix::from_rows(&[&[2, 1, 0], &[0, 3, 4], &[1, 0, 1]]);
        // 2*(3*1 - 4*0) - 1*(0*1 - 4*1) + 0 = 6 + 4 = 10 = 0 mod 5
        assert_eq!(m.det(&f), 0);
        let m = Matrix::from_rows(&[&[0, 1], &[4, 0]]);
        assert_eq!(m.det(&f), 1);
    }

    #[test]
    fn projective_line_sizes() {
        let f = field(3, 2).unwrap();
        assert_eq!(Domain::projective(&f, 2, |_| true).len(), 10);
        assert_eq!(Domain::vectors(&f, 2).len(), 80);
    }
}
