//! Integer vectors, 2×2 integer matrices and subgroups of ℤ².
//!
//! Subgroups are kept in a canonical Hermite normal form so that two
//! generating sets of the same subgroup compare equal, and every vector has a
//! canonical representative modulo the subgroup.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An element of ℤ²: `du` steps along the longitude direction `u`, `dv` along
/// the meridian direction `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct WrapVector {
    pub du: i64,
    pub dv: i64,
}

impl WrapVector {
    pub const ZERO: WrapVector = WrapVector { du: 0, dv: 0 };

    pub const fn new(du: i64, dv: i64) -> Self {
        WrapVector { du, dv }
    }

    pub fn is_zero(self) -> bool {
        self.du == 0 && self.dv == 0
    }

    /// Identifies `v` with `-v`: the result has `du > 0`, or `du == 0` and `dv >= 0`.
    pub fn sign_normalized(self) -> Self {
        if self.du < 0 || (self.du == 0 && self.dv < 0) {
            -self
        } else {
            self
        }
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn content(self) -> i64 {
        gcd(self.du, self.dv)
    }

    /// The primitive vector in the same direction (zero stays zero).
    pub fn primitive(self) -> Self {
        let g = self.content();
        if g == 0 {
            self
        } else {
            WrapVector::new(self.du / g, self.dv / g)
        }
    }

    pub fn l1(self) -> i64 {
        self.du.abs() + self.dv.abs()
    }

    /// z-component of the planar cross product.
    pub fn cross(self, other: WrapVector) -> i64 {
        self.du * other.dv - self.dv * other.du
    }
}

impl From<[i64; 2]> for WrapVector {
    fn from(a: [i64; 2]) -> Self {
        WrapVector::new(a[0], a[1])
    }
}

impl From<WrapVector> for [i64; 2] {
    fn from(w: WrapVector) -> Self {
        [w.du, w.dv]
    }
}

impl Add for WrapVector {
    type Output = WrapVector;
    fn add(self, o: WrapVector) -> WrapVector {
        WrapVector::new(self.du + o.du, self.dv + o.dv)
    }
}

impl AddAssign for WrapVector {
    fn add_assign(&mut self, o: WrapVector) {
        self.du += o.du;
        self.dv += o.dv;
    }
}

impl Sub for WrapVector {
    type Output = WrapVector;
    fn sub(self, o: WrapVector) -> WrapVector {
        WrapVector::new(self.du - o.du, self.dv - o.dv)
    }
}

impl SubAssign for WrapVector {
    fn sub_assign(&mut self, o: WrapVector) {
        self.du -= o.du;
        self.dv -= o.dv;
    }
}

impl Neg for WrapVector {
    type Output = WrapVector;
    fn neg(self) -> WrapVector {
        WrapVector::new(-self.du, -self.dv)
    }
}

impl Mul<WrapVector> for i64 {
    type Output = WrapVector;
    fn mul(self, w: WrapVector) -> WrapVector {
        WrapVector::new(self * w.du, self * w.dv)
    }
}

impl fmt::Display for WrapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.du, self.dv)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// A 2×2 integer matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix2 {
    pub m: [[i64; 2]; 2],
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 { m: [[1, 0], [0, 1]] };

    pub const fn new(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Matrix2 { m: [[m11, m12], [m21, m22]] }
    }

    /// Matrix whose columns are `a` and `b`.
    pub fn from_columns(a: WrapVector, b: WrapVector) -> Self {
        Matrix2::new(a.du, b.du, a.dv, b.dv)
    }

    pub fn diag(a: i64, d: i64) -> Self {
        Matrix2::new(a, 0, 0, d)
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn column(&self, j: usize) -> WrapVector {
        WrapVector::new(self.m[0][j], self.m[1][j])
    }

    pub fn apply(&self, w: WrapVector) -> WrapVector {
        WrapVector::new(
            self.m[0][0] * w.du + self.m[0][1] * w.dv,
            self.m[1][0] * w.du + self.m[1][1] * w.dv,
        )
    }

    /// Adjugate: `self · adj = det · I`.
    pub fn adjugate(&self) -> Matrix2 {
        Matrix2::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<Matrix2> {
        match self.det() {
            1 => Some(self.adjugate()),
            -1 => {
                let a = self.adjugate();
                Some(Matrix2::new(-a.m[0][0], -a.m[0][1], -a.m[1][0], -a.m[1][1]))
            }
            _ => None,
        }
    }

    /// Solves `self · k = w` over ℤ, if an integral solution exists.
    pub fn solve(&self, w: WrapVector) -> Option<WrapVector> {
        let det = self.det();
        if det == 0 {
            return None;
        }
        let num = self.adjugate().apply(w);
        if num.du % det != 0 || num.dv % det != 0 {
            return None;
        }
        Some(WrapVector::new(num.du / det, num.dv / det))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        let mut r = [[0i64; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        Matrix2 { m: r }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

/// A subgroup of ℤ² in Hermite normal form.
///
/// Rank 2: basis `(a, b), (0, d)` with `a, d > 0` and `0 <= b < d`.
/// Rank 1: a single sign-normalized generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: Vec<WrapVector>,
}

impl Lattice {
    pub fn zero() -> Self {
        Lattice { basis: Vec::new() }
    }

    pub fn full() -> Self {
        Lattice { basis: vec![WrapVector::new(1, 0), WrapVector::new(0, 1)] }
    }

    pub fn spanned_by<I: IntoIterator<Item = WrapVector>>(gens: I) -> Self {
        // Pivot row carries the gcd of all first coordinates seen so far;
        // whatever remains has du == 0 and only contributes to the second gcd.
        let mut pivot: Option<WrapVector> = None;
        let mut second = 0i64;
        for v in gens {
            if v.is_zero() {
                continue;
            }
            match pivot {
                None if v.du != 0 => pivot = Some(v),
                None => second = gcd(second, v.dv),
                Some(p) => {
                    if v.du == 0 {
                        second = gcd(second, v.dv);
                        continue;
                    }
                    let (g, x, y) = ext_gcd(p.du, v.du);
                    let new_pivot = WrapVector::new(g, x * p.dv + y * v.dv);
                    // (v.du/g)·p − (p.du/g)·v has a zero first coordinate.
                    let rest = (v.du / g) * p - (p.du / g) * v;
                    debug_assert_eq!(rest.du, 0);
                    pivot = Some(new_pivot);
                    second = gcd(second, rest.dv);
                }
            }
        }
        match pivot {
            None if second == 0 => Lattice::zero(),
            None => Lattice { basis: vec![WrapVector::new(0, second)] },
            Some(p) => {
                let p = p.sign_normalized();
                if second == 0 {
                    Lattice { basis: vec![p] }
                } else {
                    Lattice {
                        basis: vec![WrapVector::new(p.du, p.dv.rem_euclid(second)), WrapVector::new(0, second)],
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[WrapVector] {
        &self.basis
    }

    /// Index in ℤ² for a rank-2 lattice.
    pub fn index(&self) -> Option<i64> {
        (self.rank() == 2).then(|| self.basis[0].du * self.basis[1].dv)
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: WrapVector) -> WrapVector {
        match self.basis.as_slice() {
            [] => v,
            [w] => {
                let t = if w.du != 0 { v.du.div_euclid(w.du) } else { v.dv.div_euclid(w.dv) };
                v - t * *w
            }
            [p, q] => {
                let t = v.du.div_euclid(p.du);
                let v = v - t * *p;
                let s = v.dv.div_euclid(q.dv);
                v - s * *q
            }
            _ => unreachable!("lattice of rank > 2"),
        }
    }

    pub fn contains(&self, v: WrapVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        Lattice::spanned_by(self.basis.iter().chain(other.basis.iter()).copied())
    }

    /// Coset representatives of ℤ²/self for a rank-2 lattice, in canonical order.
    pub fn coset_representatives(&self) -> Option<Vec<WrapVector>> {
        let [p, q] = self.basis.as_slice() else { return None };
        let mut reps = Vec::with_capacity((p.du * q.dv) as usize);
        for x in 0..p.du {
            for y in 0..q.dv {
                reps.push(WrapVector::new(x, y));
            }
        }
        Some(reps)
    }

    /// The unique sign-normalized primitive direction of a rank-1 lattice.
    pub fn direction(&self) -> Option<WrapVector> {
        match self.basis.as_slice() {
            [w] => Some(w.primitive().sign_normalized()),
            _ => None,
        }
    }
}

/// Column-style Hermite representatives `[[a, b], [0, d]]` (`0 <= b < a`) of
/// every sublattice of ℤ² with the given index.
pub fn sublattice_representatives(index: i64) -> Vec<Matrix2> {
    let mut out = Vec::new();
    for a in 1..=index {
        if index % a != 0 {
            continue;
        }
        let d = index / a;
        for b in 0..a {
            out.push(Matrix2::new(a, b, 0, d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> WrapVector {
        WrapVector::new(a, b)
    }

    #[test]
    fn hnf_of_standard_generators() {
        let l = Lattice::spanned_by([w(1, 0), w(0, 1)]);
        assert_eq!(l, Lattice::full());
        assert_eq!(l.index(), Some(1));
    }

    #[test]
    fn rank_one_generator_is_sign_normalized() {
        let l = Lattice::spanned_by([w(-2, -4), w(3, 6)]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis(), &[w(1, 2)]);
        assert_eq!(l.direction(), Some(w(1, 2)));
        let l = Lattice::spanned_by([w(0, -3)]);
        assert_eq!(l.basis(), &[w(0, 3)]);
    }

    #[test]
    fn rank_two_index_and_reduction() {
        let l = Lattice::spanned_by([w(2, 1), w(0, 3)]);
        assert_eq!(l.index(), Some(6));
        assert_eq!(l.reduce(w(5, 5)), w(1, 0));
        assert!(l.contains(w(4, 2)));
        assert!(!l.contains(w(1, 0)));
    }

    #[test]
    fn zero_lattice() {
        let l = Lattice::spanned_by([w(0, 0)]);
        assert_eq!(l.rank(), 0);
        assert_eq!(l.reduce(w(3, -1)), w(3, -1));
    }

    #[test]
    fn sublattice_count_is_divisor_sum() {
        for (n, sigma) in [(1, 1), (2, 3), (3, 4), (4, 7), (5, 6), (6, 12)] {
            assert_eq!(sublattice_representatives(n).len(), sigma);
        }
    }

    #[test]
    fn unimodular_inverse_and_solve() {
        let m = Matrix2::new(1, 1, 0, 1);
        assert_eq!(m * m.unimodular_inverse().unwrap(), Matrix2::IDENTITY);
        let l = Matrix2::diag(2, 3);
        assert_eq!(l.solve(w(4, 9)), Some(w(2, 3)));
        assert_eq!(l.solve(w(1, 0)), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec2() -> impl Strategy<Value = WrapVector> {
            (-6i64..=6, -6i64..=6).prop_map(|(a, b)| WrapVector::new(a, b))
        }

        proptest! {
            #[test]
            fn reduce_is_canonical(gens in prop::collection::vec(vec2(), 0..4), v in vec2(), k in vec2()) {
                let l = Lattice::spanned_by(gens.clone());
                let r = l.reduce(v);
                prop_assert!(l.contains(v - r));
                prop_assert_eq!(l.reduce(r), r);
                // shifting by a lattice element does not change the representative
                let shift = gens.iter().fold(WrapVector::ZERO, |acc, g| acc + k.du * *g);
                prop_assert_eq!(l.reduce(v + shift), r);
            }

            #[test]
            fn span_contains_generators(gens in prop::collection::vec(vec2(), 0..4)) {
                let l = Lattice::spanned_by(gens.clone());
                for g in &gens {
                    prop_assert!(l.contains(*g));
                }
                prop_assert_eq!(Lattice::spanned_by(l.basis().to_vec()), l.clone());
            }

            #[test]
            fn normalization_is_idempotent(v in vec2()) {
                prop_assert_eq!(v.sign_normalized().sign_normalized(), v.sign_normalized());
                prop_assert_eq!((-v).sign_normalized(), v.sign_normalized());
            }
        }
    }
}
