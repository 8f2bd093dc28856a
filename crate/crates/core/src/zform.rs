//! Symplectic modules over `Z/l^k`.
//!
//! Vectors have `2g` coordinates and the form is `ω(u, v) = uᵀ J v` with
//! `J = [[0, I], [−I, 0]]`, so `ω(e_i, e_{g+i}) = 1`. A basis is listed as
//! `e_1..e_g, f_1..f_g`. Matrices are row-major and act on column vectors.

use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

pub type Vector = Vec<u64>;
pub type Matrix = Vec<Vec<u64>>;

/// Tuples enumerated by [`orbit_count_bruteforce`] are capped at this.
pub const MAX_ENUMERATION: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZformError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid lattice parameters: {0}")]
    InvalidParameters(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no symplectic completion exists: {0}")]
    DegenerateInput(String),
    #[error("input is not a symplectic basis")]
    NotSymplectic,
    #[error("expected {expected} rows, got {rows}")]
    WrongRank { rows: usize, expected: usize },
    #[error("enumeration of {count} tuples exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u64 },
}

pub type Result<T> = std::result::Result<T, ZformError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticLattice {
    g: usize,
    l: u64,
    k: u32,
    q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vector>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl SymplecticLattice {
    pub fn new(g: usize, l: u64, k: u32) -> Result<Self> {
        if !is_prime(l) {
            return Err(ZformError::NotPrime(l));
        }
        if g == 0 || k == 0 {
            return Err(ZformError::InvalidParameters("need g ≥ 1 and k ≥ 1".into()));
        }
        let q = l
            .checked_pow(k)
            .filter(|&q| q < 1 << 31)
            .ok_or_else(|| ZformError::InvalidParameters(format!("{l}^{k} is too large")))?;
        Ok(SymplecticLattice { g, l, k, q })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The coefficient modulus `l^k`.
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.l)
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        let e = (a as i64).extended_gcd(&(self.q as i64));
        (e.gcd == 1).then(|| self.reduce(e.x))
    }

    /// The standard Gram matrix `J`.
    pub fn standard_form(&self) -> Matrix {
        let n = self.rank();
        let mut j = vec![vec![0; n]; n];
        for i in 0..self.g {
            j[i][self.g + i] = 1;
            j[self.g + i][i] = self.q - 1;
        }
        j
    }

    pub fn standard_basis(&self) -> LatticeBasis {
        LatticeBasis {
            vectors: identity(self.rank()),
        }
    }

    pub fn omega(&self, u: &[u64], v: &[u64]) -> u64 {
        let g = self.g;
        (0..g).fold(0, |acc, i| {
            self.sub(self.add(acc, self.mul(u[i], v[g + i])), self.mul(u[g + i], v[i]))
        })
    }

    pub fn gram(&self, rows: &[Vector]) -> Matrix {
        rows.iter()
            .map(|u| rows.iter().map(|v| self.omega(u, v)).collect())
            .collect()
    }

    fn check_vectors(&self, rows: &[Vector]) -> Result<()> {
        match rows.iter().find(|v| v.len() != self.rank()) {
            Some(v) => Err(ZformError::Shape(format!(
                "vector of length {} in rank {}",
                v.len(),
                self.rank()
            ))),
            None => Ok(()),
        }
    }

    fn normalize(&self, rows: &[Vector]) -> Vec<Vector> {
        rows.iter().map(|v| v.iter().map(|&x| x % self.q).collect()).collect()
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let (n, m) = (a.len(), b.first().map_or(0, Vec::len));
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..b.len()).fold(0, |acc, t| self.add(acc, self.mul(a[i][t], b[t][j]))))
                    .collect()
            })
            .collect()
    }

    pub fn apply(&self, t: &Matrix, v: &[u64]) -> Vector {
        t.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b))))
            .collect()
    }

    pub fn transpose(m: &Matrix) -> Matrix {
        let cols = m.first().map_or(0, Vec::len);
        (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
    }

    /// Inverse by Gauss–Jordan elimination with unit pivots.
    pub fn mat_inverse(&self, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        let mut a: Vec<Vec<u64>> = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|&x| x % self.q)
                    .chain((0..n).map(|j| (i == j) as u64))
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| self.is_unit(a[r][c]))?;
            a.swap(c, p);
            let inv = self.inverse(a[c][c]).unwrap();
            for x in a[c].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..n {
                if r != c && a[r][c] != 0 {
                    let f = a[r][c];
                    for j in 0..2 * n {
                        a[r][j] = self.sub(a[r][j], self.mul(f, a[c][j]));
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// `λ` with `Gram(b) = λJ` and `λ` a unit, if any.
    pub fn multiplier(&self, b: &LatticeBasis) -> Option<u64> {
        if b.vectors.len() != self.rank() || self.check_vectors(&b.vectors).is_err() {
            return None;
        }
        let gram = self.gram(&self.normalize(&b.vectors));
        let lambda = gram[0][self.g];
        let j = self.standard_form();
        let scaled: Matrix = j
            .iter()
            .map(|r| r.iter().map(|&x| self.mul(x, lambda)).collect())
            .collect();
        (self.is_unit(lambda) && gram == scaled).then_some(lambda)
    }

    /// Whether `T` preserves the form up to a unit; returns the multiplier.
    pub fn gsp_multiplier(&self, t: &Matrix) -> Option<u64> {
        self.multiplier(&LatticeBasis {
            vectors: Self::transpose(t),
        })
    }

    /// Solves `A x = b` with unit pivots, free variables set to zero.
    fn solve(&self, a: &[Vector], b: &[u64]) -> Option<Vector> {
        let n = a.first().map_or(self.rank(), Vec::len);
        let mut rows: Vec<Vector> = a
            .iter()
            .zip(b)
            .map(|(r, &y)| r.iter().copied().chain([y]).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..n {
            let Some(p) = (top..rows.len()).find(|&r| self.is_unit(rows[r][c])) else {
                continue;
            };
            rows.swap(top, p);
            let inv = self.inverse(rows[top][c]).unwrap();
            for x in rows[top].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..rows.len() {
                if r != top && rows[r][c] != 0 {
                    let f = rows[r][c];
                    for j in 0..=n {
                        rows[r][j] = self.sub(rows[r][j], self.mul(f, rows[top][j]));
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        if rows[top..].iter().any(|r| r.iter().any(|&x| x != 0)) {
            return None;
        }
        let mut x = vec![0; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][n];
        }
        Some(x)
    }

    /// Completes `partial` (the first vectors of a basis, in the order
    /// `e_1..e_g, f_1..f_g`) to a symplectic basis with multiplier 1.
    pub fn complete_symplectic(&self, partial: &[Vector]) -> Result<LatticeBasis> {
        let (g, n) = (self.g, self.rank());
        self.check_vectors(partial)?;
        if partial.len() > n {
            return Err(ZformError::WrongRank {
                rows: partial.len(),
                expected: n,
            });
        }
        let partial = self.normalize(partial);
        if let Some(v) = partial.iter().find(|v| !v.iter().any(|&x| self.is_unit(x))) {
            return Err(ZformError::DegenerateInput(format!("{v:?} is not unimodular")));
        }
        let j = self.standard_form();
        let p = partial.len();
        let gram = self.gram(&partial);
        if (0..p).any(|a| (0..p).any(|b| gram[a][b] != j[a][b])) {
            return Err(ZformError::DegenerateInput(
                "pairings do not match the standard form".into(),
            ));
        }

        let mut e: Vec<Option<Vector>> = (0..g).map(|i| partial.get(i).cloned()).collect();
        let mut f: Vec<Option<Vector>> = (0..g).map(|i| partial.get(g + i).cloned()).collect();
        let std = identity(n);
        for i in 0..g {
            if e[i].is_none() {
                // Project standard vectors off the finished pairs.
                let project = |v: &Vector| {
                    let mut w = v.clone();
                    for t in 0..i {
                        let (et, ft) = (e[t].as_ref().unwrap(), f[t].as_ref().unwrap());
                        let (a, b) = (self.omega(v, ft), self.omega(v, et));
                        for c in 0..n {
                            w[c] = self.add(self.sub(w[c], self.mul(a, et[c])), self.mul(b, ft[c]));
                        }
                    }
                    w
                };
                let comp: Vec<Vector> = std.iter().map(project).collect();
                let pick = comp
                    .iter()
                    .find(|w| comp.iter().any(|u| self.is_unit(self.omega(w, u))))
                    .ok_or_else(|| ZformError::DegenerateInput("orthogonal complement is degenerate".into()))?;
                e[i] = Some(pick.clone());
            }
            if f[i].is_none() {
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                let as_row = |w: &Vector| {
                    (0..n)
                        .map(|c| (0..n).fold(0, |acc, r| self.add(acc, self.mul(w[r], j[r][c]))))
                        .collect::<Vector>()
                };
                for (t, et) in e.iter().enumerate() {
                    if let Some(et) = et {
                        rows.push(as_row(et));
                        rhs.push((t == i) as u64);
                    }
                }
                for ft in f.iter().flatten() {
                    rows.push(as_row(ft));
                    rhs.push(0);
                }
                let x = self
                    .solve(&rows, &rhs)
                    .ok_or_else(|| ZformError::DegenerateInput(format!("no partner for e_{}", i + 1)))?;
                f[i] = Some(x);
            }
        }
        let basis = LatticeBasis {
            vectors: e.into_iter().chain(f).map(Option::unwrap).collect(),
        };
        match self.multiplier(&basis) {
            Some(1) => Ok(basis),
            _ => Err(ZformError::DegenerateInput("completion is not symplectic".into())),
        }
    }

    /// `T` with `T·b1_i = b2_i` and its multiplier `λ`.
    pub fn transport(&self, b1: &LatticeBasis, b2: &LatticeBasis) -> Result<(Matrix, u64)> {
        let l1 = self.multiplier(b1).ok_or(ZformError::NotSymplectic)?;
        let l2 = self.multiplier(b2).ok_or(ZformError::NotSymplectic)?;
        let m1 = Self::transpose(&self.normalize(&b1.vectors));
        let m2 = Self::transpose(&self.normalize(&b2.vectors));
        let inv = self.mat_inverse(&m1).ok_or(ZformError::NotSymplectic)?;
        let t = self.mat_mul(&m2, &inv);
        Ok((t, self.mul(l2, self.inverse(l1).unwrap())))
    }

    /// Whether the Gram determinant of `rows` is a unit.
    pub fn sublattice_nondegenerate(&self, rows: &[Vector]) -> Result<bool> {
        if rows.len() != self.rank() {
            return Err(ZformError::WrongRank {
                rows: rows.len(),
                expected: self.rank(),
            });
        }
        self.check_vectors(rows)?;
        // A unit determinant is the same as invertibility over F_l.
        let field = SymplecticLattice {
            k: 1,
            q: self.l,
            ..*self
        };
        Ok(field.mat_inverse(&self.gram(&self.normalize(rows))).is_some())
    }

    /// A random basis: random transvections applied to the standard basis,
    /// then a random unit multiplier on the `e` half.
    pub fn random_basis<R: Rng>(&self, rng: &mut R) -> LatticeBasis {
        let n = self.rank();
        let mut vs = identity(n);
        for _ in 0..3 * n {
            let w: Vector = (0..n).map(|_| rng.gen_range(0..self.q)).collect();
            let c = rng.gen_range(0..self.q);
            for v in vs.iter_mut() {
                let s = self.mul(c, self.omega(v, &w));
                for (x, &y) in v.iter_mut().zip(&w) {
                    *x = self.add(*x, self.mul(s, y));
                }
            }
        }
        let lambda = loop {
            let x = rng.gen_range(1..self.q);
            if self.is_unit(x) {
                break x;
            }
        };
        for v in vs.iter_mut().take(self.g) {
            for x in v.iter_mut() {
                *x = self.mul(*x, lambda);
            }
        }
        LatticeBasis { vectors: vs }
    }
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect()
}

pub fn is_symplectic_basis(b: &LatticeBasis, lattice: &SymplecticLattice) -> bool {
    lattice.multiplier(b).is_some()
}

pub fn complete_symplectic(partial: &[Vector], lattice: &SymplecticLattice) -> Result<LatticeBasis> {
    lattice.complete_symplectic(partial)
}

pub fn transport(b1: &LatticeBasis, b2: &LatticeBasis, lattice: &SymplecticLattice) -> Result<(Matrix, u64)> {
    lattice.transport(b1, b2)
}

pub fn sublattice_nondegenerate(rows: &[Vector], lattice: &SymplecticLattice) -> Result<bool> {
    lattice.sublattice_nondegenerate(rows)
}

/// Group acting on bases in [`orbit_count_bruteforce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActingGroup {
    /// All of `GSp_{2g}(Z/l^k)`.
    Full,
    /// The identity only.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    pub bases: u64,
    pub orbits: u64,
}

/// Enumerates every ordered `2g`-tuple of vectors, keeps the symplectic
/// bases and counts their orbits under `group`.
pub fn orbit_count_bruteforce(lattice: &SymplecticLattice, group: ActingGroup) -> Result<OrbitCount> {
    let n = lattice.rank();
    let q = lattice.modulus();
    let digits = (n * n) as u32;
    let count = (q as u128).pow(digits);
    if count > MAX_ENUMERATION as u128 {
        return Err(ZformError::EnumerationTooLarge {
            count,
            limit: MAX_ENUMERATION,
        });
    }
    let decode = |mut idx: u64| -> LatticeBasis {
        let mut vectors = vec![vec![0; n]; n];
        for v in vectors.iter_mut() {
            for x in v.iter_mut() {
                *x = idx % q;
                idx /= q;
            }
        }
        LatticeBasis { vectors }
    };
    let mut bases: Vec<LatticeBasis> = (0..count as u64)
        .into_par_iter()
        .map(decode)
        .filter(|b| lattice.multiplier(b).is_some())
        .collect();
    bases.sort_by(|a, b| a.vectors.cmp(&b.vectors));
    let total = bases.len() as u64;
    let orbits = match group {
        ActingGroup::Trivial => total,
        ActingGroup::Full => {
            // A matrix lies in GSp exactly when its columns form a basis.
            let elements: Vec<Matrix> = bases.iter().map(|b| SymplecticLattice::transpose(&b.vectors)).collect();
            let mut seen = vec![false; bases.len()];
            let mut orbits = 0;
            for i in 0..bases.len() {
                if seen[i] {
                    continue;
                }
                orbits += 1;
                for t in &elements {
                    let image: Vec<Vector> = bases[i].vectors.iter().map(|v| lattice.apply(t, v)).collect();
                    let pos = bases
                        .binary_search_by(|b| b.vectors.cmp(&image))
                        .expect("orbit stays among bases");
                    seen[pos] = true;
                }
            }
            orbits
        }
    };
    Ok(OrbitCount { bases: total, orbits })
}
