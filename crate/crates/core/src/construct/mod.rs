//! Concrete groups: symmetric, alternating and cyclic groups, small linear
//! groups, three Mathieu groups, affine Frobenius-type groups and the
//! extensions built from them.
//!
//! Each constructor checks the order it produced against the closed form and
//! attaches known normal subgroups as hints (smallest first).

mod linear;

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::arith::{gcd, is_prime, mult_order_mod, prime_power};
use crate::error::{Error, Result};
use crate::finfield::field;
use crate::perm::{read_generator_file, GroupHandle, Limits, Permutation};

/// A group named in the specification grammar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupSpec {
    Symmetric(u64),
    Alternating(u64),
    Cyclic(u64),
    ElemAbelian { p: u64, k: u64 },
    Dihedral(u64),
    Psl { n: u64, q: u64 },
    Pgl2(u64),
    Sl2(u64),
    Psu3(u64),
    Psp4(u64),
    Mathieu(u64),
    MersenneFrobenius(u64),
    AffineFrobenius { r: u64, a: u64, p: u64 },
    CyclicExt { n: u64, m: u64, e: u64 },
    PLengthTwo(u64),
    DirectProduct(Vec<GroupSpec>),
    FromFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Symmetric(n) => write!(f, "S({n})"),
            Alternating(n) => write!(f, "A({n})"),
            Cyclic(n) => write!(f, "C({n})"),
            ElemAbelian { p, k } => write!(f, "E({p},{k})"),
            Dihedral(n) => write!(f, "D({n})"),
            Psl { n, q } => write!(f, "PSL({n},{q})"),
            Pgl2(q) => write!(f, "PGL(2,{q})"),
            Sl2(q) => write!(f, "SL(2,{q})"),
            Psu3(q) => write!(f, "PSU(3,{q})"),
            Psp4(q) => write!(f, "PSp(4,{q})"),
            Mathieu(n) => write!(f, "M({n})"),
            MersenneFrobenius(n) => write!(f, "Frob({n})"),
            AffineFrobenius { r, a, p } => write!(f, "Aff({r},{a},{p})"),
            CyclicExt { n, m, e } => write!(f, "CExt({n},{m},{e})"),
            PLengthTwo(p) => write!(f, "PL2({p})"),
            DirectProduct(parts) => {
                f.write_str("DP(")?;
                for (i, g) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            FromFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

fn domain(ok: bool, rule: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(rule()))
    }
}

fn is_prime_power(q: u64) -> bool {
    q >= 2 && prime_power(q).is_some()
}

impl GroupSpec {
    /// Checks every parameter against its constructor's domain.
    pub fn validate(&self) -> Result<()> {
        use GroupSpec::*;
        match *self {
            Symmetric(n) => domain(n >= 1, || format!("S(n) needs n >= 1, got {n}")),
            Alternating(n) => domain(n >= 1, || format!("A(n) needs n >= 1, got {n}")),
            Cyclic(n) => domain(n >= 1, || format!("C(n) needs n >= 1, got {n}")),
            ElemAbelian { p, k } => {
                domain(is_prime(p), || format!("E(p,k) needs p prime, got {p}"))?;
                domain(k >= 1, || format!("E(p,k) needs k >= 1, got {k}"))
            }
            Dihedral(n) => domain(n >= 3, || format!("D(n) needs n >= 3, got {n}")),
            Psl { n, q } => {
                domain(is_prime_power(q), || format!("{q} is not a prime power"))?;
                match n {
                    2 => domain(q <= 1 << 16, || {
                        format!("PSL(2,q) needs q <= 65536, got {q}")
                    }),
                    3 => domain(q <= 4, || format!("PSL(3,q) needs q in {{2,3,4}}, got {q}")),
                    _ => Err(Error::param(format!(
                        "PSL(n,q) needs n in {{2,3}}, got {n}"
                    ))),
                }
            }
            Pgl2(q) => {
                domain(is_prime_power(q), || format!("{q} is not a prime power"))?;
                domain(q <= 1 << 16, || {
                    format!("PGL(2,q) needs q <= 65536, got {q}")
                })
            }
            Sl2(q) => {
                domain(is_prime_power(q), || format!("{q} is not a prime power"))?;
                domain(q <= 256, || format!("SL(2,q) needs q <= 256, got {q}"))
            }
            Psu3(q) => domain(q == 2 || q == 3, || {
                format!("PSU(3,q) needs q in {{2,3}}, got {q}")
            }),
            Psp4(q) => domain(q == 2 || q == 3, || {
                format!("PSp(4,q) needs q in {{2,3}}, got {q}")
            }),
            Mathieu(n) => domain(matches!(n, 11 | 12 | 22), || {
                format!("M(n) needs n in {{11,12,22}}, got {n}")
            }),
            MersenneFrobenius(n) => domain(matches!(n, 2 | 3 | 5 | 7), || {
                format!("Frob(n) needs 2^n - 1 prime with n in {{2,3,5,7}}, got {n}")
            }),
            AffineFrobenius { r, a, p } => {
                domain(is_prime(r), || format!("Aff(r,a,p) needs r prime, got {r}"))?;
                domain(is_prime(p), || format!("Aff(r,a,p) needs p prime, got {p}"))?;
                let size = (1..=16)
                    .contains(&a)
                    .then(|| r.checked_pow(a as u32))
                    .flatten();
                let size = size.filter(|&s| s <= 1 << 16).ok_or_else(|| {
                    Error::param(format!(
                        "Aff(r,a,p) needs 1 <= a and r^a <= 65536, got {r}^{a}"
                    ))
                })?;
                domain((size - 1) % p == 0, || {
                    format!("Aff(r,a,p) needs p | r^a - 1, got {p} and {size}")
                })
            }
            CyclicExt { n, m, e } => {
                domain(n >= 2 && m >= 1, || {
                    format!("CExt(n,m,e) needs n >= 2 and m >= 1, got n={n}, m={m}")
                })?;
                domain(gcd(e % n, n) == 1, || {
                    format!("CExt(n,m,e) needs gcd(e,n) = 1, got e={e}, n={n}")
                })?;
                domain(m % mult_order_mod(e, n) == 0, || {
                    format!("CExt(n,m,e) needs e^m = 1 mod n, got e={e}, m={m}, n={n}")
                })
            }
            PLengthTwo(p) => domain(p == 3 || p == 7, || {
                format!("PL2(p) needs p in {{3,7}}, got {p}")
            }),
            DirectProduct(ref parts) => {
                domain(!parts.is_empty(), || "DP needs at least one factor".into())?;
                parts.iter().try_for_each(GroupSpec::validate)
            }
            FromFile(_) => Ok(()),
        }
    }

    /// Builds the group with default limits.
    pub fn build(&self) -> Result<GroupHandle> {
        self.build_with(Limits::default())
    }

    pub fn build_with(&self, limits: Limits) -> Result<GroupHandle> {
        self.validate()?;
        let mut g = build(self)?.with_label(self.to_string());
        g.set_limits(limits);
        if g.degree() > limits.max_degree {
            return Err(Error::limit(
                format!("degree of {self}"),
                limits.max_degree as u64,
            ));
        }
        Ok(g)
    }
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

fn handle(gens: Vec<Permutation>, label: &str) -> Result<GroupHandle> {
    GroupHandle::new(gens, label)
}

fn check_order(g: &GroupHandle, expected: u64, what: &str) -> Result<()> {
    match g.order_u64() {
        Some(n) if n == expected => Ok(()),
        _ => Err(Error::param(format!(
            "{what} has order {} instead of {expected}",
            g.order()
        ))),
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn symmetric(n: u64) -> Result<GroupHandle> {
    GroupSpec::Symmetric(n).build()
}

pub fn alternating(n: u64) -> Result<GroupHandle> {
    GroupSpec::Alternating(n).build()
}

fn symmetric_gens(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return vec![Permutation::identity(n.max(1))];
    }
    vec![cycle(n, 1..=n), cycle(n, [1, 2])]
}

fn alternating_gens(n: usize) -> Vec<Permutation> {
    match n {
        0..=2 => vec![Permutation::identity(n.max(1))],
        3 => vec![cycle(3, [1, 2, 3])],
        _ if n % 2 == 1 => vec![cycle(n, [1, 2, 3]), cycle(n, 1..=n)],
        _ => vec![cycle(n, [1, 2, 3]), cycle(n, 2..=n)],
    }
}

fn klein_four() -> Vec<Permutation> {
    let d = |a: &[usize], b: &[usize]| {
        Permutation::from_cycles(4, &[a.to_vec(), b.to_vec()]).expect("valid")
    };
    vec![d(&[1, 2], &[3, 4]), d(&[1, 3], &[2, 4])]
}

/// Affine maps `x -> c x + b` on `GF(r^a)` with `c` running over the powers
/// of `mult`, as permutations of the field codes: translations by a basis,
/// then the multiplication.
fn affine_gens(r: u64, a: u32, mult: u32) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    let f = field(r, a)?;
    let q = f.size();
    let mut translations = Vec::new();
    for i in 0..a {
        let mut basis = vec![0u32; a as usize];
        basis[i as usize] = 1;
        let b = f.from_coeffs(&basis);
        let images: Vec<u32> = f.elements().map(|x| f.add(x, b)).collect();
        translations.push(Permutation::from_images(images)?);
    }
    let scale: Vec<u32> = (0..q).map(|x| f.mul(mult, x)).collect();
    let scale = Permutation::from_images(scale)?;
    let mut gens = translations.clone();
    if !scale.is_identity() {
        gens.push(scale);
    }
    Ok((gens, translations))
}

fn build(spec: &GroupSpec) -> Result<GroupHandle> {
    use GroupSpec::*;
    let label = spec.to_string();
    let label = label.as_str();
    Ok(match *spec {
        Symmetric(n) => {
            let n = n as usize;
            let g = handle(symmetric_gens(n), label)?;
            check_order(&g, factorial(n as u64), label)?;
            let mut hints = Vec::new();
            if n == 4 {
                hints.push(klein_four());
            }
            if n >= 3 {
                hints.push(alternating_gens(n));
            }
            g.with_hints(hints)
        }
        Alternating(n) => {
            let n = n as usize;
            let g = handle(alternating_gens(n), label)?;
            check_order(&g, factorial(n as u64).div_ceil(2).max(1), label)?;
            if n == 4 {
                g.with_hints(vec![klein_four()])
            } else {
                g
            }
        }
        Cyclic(n) => {
            let n = n as usize;
            let gen = if n == 1 {
                Permutation::identity(1)
            } else {
                cycle(n, 1..=n)
            };
            handle(vec![gen], label)?
        }
        ElemAbelian { p, k } => {
            let (p, k) = (p as usize, k as usize);
            let degree = p * k;
            let gens = (0..k)
                .map(|i| cycle(degree, i * p + 1..=(i + 1) * p))
                .collect();
            let g = handle(gens, label)?;
            check_order(&g, (p as u64).pow(k as u32), label)?;
            g
        }
        Dihedral(n) => {
            let n = n as usize;
            let reflection: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
            let rotation = cycle(n, 1..=n);
            let g = handle(
                vec![rotation.clone(), Permutation::from_images(reflection)?],
                label,
            )?;
            check_order(&g, 2 * n as u64, label)?;
            g.with_hints(vec![vec![rotation]])
        }
        Psl { n: 2, q } => handle(linear::psl2(q)?, label)?,
        Psl { q, .. } => handle(linear::psl3(q)?, label)?,
        Pgl2(q) => {
            let g = handle(linear::pgl2(q)?, label)?;
            if q % 2 == 1 {
                let psl = handle(linear::psl2(q)?, "PSL")?;
                // the two constructions share the projective line, so PSL sits inside
                g.with_hints(vec![psl.generators().to_vec()])
            } else {
                g
            }
        }
        Sl2(q) => {
            let (gens, centre) = linear::sl2(q)?;
            let g = handle(gens, label)?;
            match centre {
                Some(z) => g.with_hints(vec![vec![z]]),
                None => g,
            }
        }
        Psu3(q) => handle(linear::psu3(q)?, label)?,
        Psp4(q) => handle(linear::psp4(q)?, label)?,
        Mathieu(n) => mathieu(n, label)?,
        MersenneFrobenius(n) => {
            let p = (1u64 << n) - 1;
            return build(&AffineFrobenius { r: 2, a: n, p }).map(|g| g.with_label(label));
        }
        AffineFrobenius { r, a, p } => {
            let f = field(r, a as u32)?;
            let c = f.exp((f.size() as u64 - 1) / p);
            let (gens, translations) = affine_gens(r, a as u32, c)?;
            let g = handle(gens, label)?;
            check_order(&g, f.size() as u64 * p, label)?;
            g.with_hints(vec![translations])
        }
        CyclicExt { n, m, e } => cyclic_ext(n, m, e, label)?,
        PLengthTwo(p) => plength_two(p, label)?,
        DirectProduct(ref parts) => {
            let built = parts.iter().map(build).collect::<Result<Vec<_>>>()?;
            direct_product(&built)?.with_label(label)
        }
        FromFile(ref path) => read_generator_file(path)?.with_label(label),
    })
}

fn mathieu(n: u64, label: &str) -> Result<GroupHandle> {
    let parse = |degree: usize, cycles: &[&[usize]]| {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cs)
    };
    let (gens, order) = match n {
        11 => (
            vec![
                parse(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]])?,
                parse(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]])?,
            ],
            7920,
        ),
        12 => (
            vec![
                parse(12, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]])?,
                parse(12, &[&[3, 7, 11, 8], &[4, 10, 5, 6]])?,
                parse(
                    12,
                    &[&[1, 12], &[2, 11], &[3, 6], &[4, 8], &[5, 9], &[7, 10]],
                )?,
            ],
            95040,
        ),
        _ => (
            vec![
                parse(
                    22,
                    &[
                        &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
                        &[12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22],
                    ],
                )?,
                parse(
                    22,
                    &[
                        &[1, 4, 5, 9, 3],
                        &[2, 8, 10, 7, 6],
                        &[12, 15, 16, 20, 14],
                        &[13, 19, 21, 18, 17],
                    ],
                )?,
                parse(
                    22,
                    &[
                        &[1, 21],
                        &[2, 10, 8, 6],
                        &[3, 13, 4, 17],
                        &[5, 19, 9, 18],
                        &[11, 22],
                        &[12, 14, 16, 20],
                    ],
                )?,
            ],
            443520,
        ),
    };
    let g = handle(gens, label)?;
    check_order(&g, order, label)?;
    Ok(g)
}

/// `C_n : C_m` with the generator of `C_m` acting as `x -> x^e`.
///
/// When `e` has order exactly `m` modulo `n` the affine action on `Z/n` is
/// faithful; otherwise an `m`-cycle on extra points records the top factor.
fn cyclic_ext(n: u64, m: u64, e: u64, label: &str) -> Result<GroupHandle> {
    let nn = n as usize;
    let faithful = mult_order_mod(e, n) == m;
    let degree = if faithful { nn } else { nn + m as usize };
    let mut shift: Vec<u32> = (0..degree as u32).collect();
    let mut scale: Vec<u32> = (0..degree as u32).collect();
    for x in 0..nn {
        shift[x] = ((x + 1) % nn) as u32;
        scale[x] = ((x as u64 * e) % n) as u32;
    }
    if !faithful {
        for i in 0..m as usize {
            scale[nn + i] = (nn + (i + 1) % m as usize) as u32;
        }
    }
    let shift = Permutation::from_images(shift)?;
    let scale = Permutation::from_images(scale)?;
    let mut gens = vec![shift.clone()];
    if !scale.is_identity() {
        gens.push(scale);
    }
    let g = handle(gens, label)?;
    check_order(&g, n * m, label)?;
    Ok(if m > 1 {
        g.with_hints(vec![vec![shift]])
    } else {
        g
    })
}

/// `W : (C_2^n : C_p)` for `p = 2^n - 1`, where `W` is the sum-zero part of
/// the permutation module `GF(p)^(2^n)` of the Frobenius group.
///
/// Realised inside `C_p wr (C_2^n : C_p)` on `p * 2^n` points: point
/// `(i, x)` with `i` in `Z/p` and `x` in `GF(2^n)` is numbered `x * p + i`.
/// A vector `w` in `W` shifts the copy over `x` by `w_x`.
fn plength_two(p: u64, label: &str) -> Result<GroupHandle> {
    let n = (p + 1).trailing_zeros();
    let f = field(2, n)?;
    let q = f.size() as usize;
    let pp = p as usize;
    let degree = pp * q;
    let c = f.primitive();
    let (top_gens, translations) = affine_gens(2, n, c)?;
    let lift = |g: &Permutation| {
        let images: Vec<u32> = (0..degree)
            .map(|pt| (g.image(pt / pp) * pp + pt % pp) as u32)
            .collect();
        Permutation::from_images(images)
    };
    // e_x - e_0: shift copy x up by one and copy 0 down by one
    let w_gen = |x: usize| {
        let images: Vec<u32> = (0..degree)
            .map(|pt| {
                let (block, i) = (pt / pp, pt % pp);
                let i = if block == x {
                    (i + 1) % pp
                } else if block == 0 {
                    (i + pp - 1) % pp
                } else {
                    i
                };
                (block * pp + i) as u32
            })
            .collect();
        Permutation::from_images(images)
    };
    let w: Vec<Permutation> = (1..q).map(w_gen).collect::<Result<_>>()?;
    let lifted_top: Vec<Permutation> = top_gens.iter().map(lift).collect::<Result<_>>()?;
    let lifted_translations: Vec<Permutation> =
        translations.iter().map(lift).collect::<Result<_>>()?;
    let mut gens = vec![w[0].clone()];
    gens.extend(lifted_top);
    let g = handle(gens, label)?;
    let expected = p.pow(q as u32 - 1) * q as u64 * p;
    check_order(&g, expected, label)?;
    let mut middle = w.clone();
    middle.extend(lifted_translations);
    Ok(g.with_hints(vec![w, middle]))
}

/// Direct product acting on the disjoint union of the factors' domains.
///
/// Hints form one ascending chain: the first factor's hints, the first
/// factor, then the second factor's hints on top of it, and so on.
pub fn direct_product(factors: &[GroupHandle]) -> Result<GroupHandle> {
    let degree: usize = factors.iter().map(GroupHandle::degree).sum();
    let mut gens = Vec::new();
    let mut hints = Vec::new();
    let mut below: Vec<Permutation> = Vec::new();
    let mut offset = 0;
    for g in factors {
        let shift = |x: &Permutation| x.shifted(offset, degree);
        for h in g.hints() {
            let mut level = below.clone();
            level.extend(h.iter().map(shift));
            hints.push(level);
        }
        let own: Vec<Permutation> = g.generators().iter().map(shift).collect();
        below.extend(own.iter().cloned());
        gens.extend(own);
        offset += g.degree();
        hints.push(below.clone());
    }
    hints.pop();
    let label = factors
        .iter()
        .map(GroupHandle::label)
        .collect::<Vec<_>>()
        .join(" x ");
    let gens: Vec<Permutation> = gens.into_iter().filter(|x| !x.is_identity()).collect();
    let gens = if gens.is_empty() {
        vec![Permutation::identity(degree)]
    } else {
        gens
    };
    Ok(handle(gens, &label)?.with_hints(hints))
}

/// The groups exercised by corpus-wide checks.
pub fn catalog() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let dp = |parts: Vec<GroupSpec>| DirectProduct(parts);
    vec![
        Cyclic(1),
        Cyclic(2),
        Cyclic(6),
        Cyclic(7),
        ElemAbelian { p: 2, k: 3 },
        ElemAbelian { p: 5, k: 2 },
        Symmetric(3),
        Symmetric(4),
        Symmetric(5),
        Alternating(4),
        Alternating(5),
        Alternating(6),
        Alternating(7),
        Dihedral(4),
        Dihedral(5),
        Dihedral(6),
        Psl { n: 2, q: 4 },
        Psl { n: 2, q: 5 },
        Psl { n: 2, q: 7 },
        Psl { n: 2, q: 8 },
        Psl { n: 2, q: 9 },
        Psl { n: 2, q: 11 },
        Psl { n: 2, q: 13 },
        Psl { n: 2, q: 17 },
        Pgl2(5),
        Pgl2(7),
        Sl2(3),
        Sl2(5),
        Psl { n: 3, q: 2 },
        Psl { n: 3, q: 3 },
        Psu3(3),
        Psp4(3),
        Mathieu(11),
        Mathieu(12),
        MersenneFrobenius(2),
        MersenneFrobenius(3),
        MersenneFrobenius(5),
        AffineFrobenius { r: 11, a: 1, p: 5 },
        AffineFrobenius { r: 5, a: 1, p: 2 },
        CyclicExt { n: 5, m: 8, e: 2 },
        CyclicExt { n: 7, m: 3, e: 2 },
        PLengthTwo(3),
        PLengthTwo(7),
        dp(vec![Alternating(5), Cyclic(7)]),
        dp(vec![Psl { n: 2, q: 7 }, Cyclic(3)]),
        dp(vec![Cyclic(3), Symmetric(3)]),
        dp(vec![Symmetric(3), Symmetric(3)]),
    ]
}

/// Closed-form orders used to cross-check constructions.
pub fn expected_order(spec: &GroupSpec) -> Option<num_bigint::BigUint> {
    use num_bigint::BigUint;
    use GroupSpec::*;
    let n = |x: u64| Some(BigUint::from(x));
    match *spec {
        Symmetric(k) => n(factorial(k)),
        Alternating(k) => n(factorial(k).div_ceil(2).max(1)),
        Cyclic(k) => n(k),
        ElemAbelian { p, k } => n(p.pow(k as u32)),
        Dihedral(k) => n(2 * k),
        Psl { n: 2, q } => n(linear::psl2_order(q)),
        Psl { n: 3, q } => n(linear::psl3_order(q)),
        Pgl2(q) | Sl2(q) => n(linear::sl2_order(q)),
        Psu3(q) => n(linear::psu3_order(q)),
        Psp4(q) => n(linear::psp4_order(q)),
        Mathieu(11) => n(7920),
        Mathieu(12) => n(95040),
        Mathieu(22) => n(443520),
        MersenneFrobenius(k) => n((1 << k) * ((1 << k) - 1)),
        AffineFrobenius { r, a, p } => n(r.pow(a as u32) * p),
        CyclicExt { n: a, m, .. } => n(a * m),
        PLengthTwo(p) => {
            let q = p + 1;
            Some(num_traits::pow(BigUint::from(p), q as usize) * BigUint::from(q))
        }
        DirectProduct(ref parts) => parts
            .iter()
            .map(expected_order)
            .try_fold(BigUint::from(1u32), |acc, o| o.map(|o| acc * o)),
        _ => None,
    }
}
