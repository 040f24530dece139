//! Integer lattices with an intersection form, and the divisor classes living in them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::rational::Ratio;
use num::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{input, invariant, Error, Result};

/// Largest lattice rank handled (degree 1 blow-up of the plane).
pub const MAX_RANK: usize = 9;

/// Coefficient vector in a fixed lattice basis. Unused trailing slots stay zero,
/// so the derived ordering is lexicographic on coefficients for equal ranks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    len: u8,
    c: [i32; MAX_RANK],
}

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        DivisorClass {
            len: rank as u8,
            c: [0; MAX_RANK],
        }
    }

    pub fn new(coeffs: &[i32]) -> Self {
        let mut d = Self::zero(coeffs.len());
        d.c[..coeffs.len()].copy_from_slice(coeffs);
        d
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut d = Self::zero(rank);
        d.c[i] = 1;
        d
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn coeffs(&self) -> &[i32] {
        &self.c[..self.len as usize]
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [i32] {
        &mut self.c[..self.len as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> i32 {
        self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Drops the last coordinate (used when contracting the last exceptional curve).
    pub fn truncate_last(&self) -> Self {
        let mut d = *self;
        d.len -= 1;
        d.c[d.len as usize] = 0;
        d
    }

    /// Packs coefficients in [-128, 127] into one integer key, order-preserving
    /// for classes of equal rank.
    pub fn pack(&self) -> u128 {
        let mut k = 0u128;
        for i in 0..MAX_RANK {
            debug_assert!((-128..128).contains(&self.c[i]));
            k = (k << 8) | ((self.c[i] + 128) as u8 as u128);
        }
        k
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl fmt::Display for DivisorClass {
    /// Renders in the standard basis L, E1, E2, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = standard_labels(self.rank());
        f.write_str(&render(self.coeffs(), &labels))
    }
}

impl Add for DivisorClass {
    type Output = Self;
    #[inline]
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl AddAssign for DivisorClass {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        debug_assert_eq!(self.len, o.len);
        for i in 0..MAX_RANK {
            self.c[i] += o.c[i];
        }
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: Self) -> Self {
        self -= o;
        self
    }
}

impl SubAssign for DivisorClass {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        debug_assert_eq!(self.len, o.len);
        for i in 0..MAX_RANK {
            self.c[i] -= o.c[i];
        }
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        for x in self.c.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl Mul<DivisorClass> for i32 {
    type Output = DivisorClass;
    #[inline]
    fn mul(self, mut d: DivisorClass) -> DivisorClass {
        for x in d.c.iter_mut() {
            *x *= self;
        }
        d
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        if v.is_empty() || v.len() > MAX_RANK {
            return Err(serde::de::Error::custom(format!(
                "divisor class needs 1..={MAX_RANK} coefficients, got {}",
                v.len()
            )));
        }
        Ok(DivisorClass::new(&v))
    }
}

fn standard_labels(rank: usize) -> Vec<String> {
    std::iter::once("L".to_string())
        .chain((1..rank).map(|i| format!("E{i}")))
        .collect()
}

fn render(coeffs: &[i32], labels: &[String]) -> String {
    let mut s = String::new();
    for (&a, lab) in coeffs.iter().zip(labels) {
        if a == 0 {
            continue;
        }
        if a < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if a.abs() != 1 {
            s.push_str(&a.abs().to_string());
        }
        s.push_str(lab);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardLattice {
    rank: usize,
    labels: Vec<String>,
    gram: Vec<i32>,
    canonical: DivisorClass,
    diagonal: bool,
    standard: bool,
}

impl PicardLattice {
    /// Blow-up of the plane in 9 - degree points: basis L, E1, ..., gram diag(1, -1, ...),
    /// canonical class -3L + sum of E_i.
    pub fn standard(degree: i32) -> Result<Self> {
        if !(1..=9).contains(&degree) {
            return input(format!("degree {degree} outside 1..=9"));
        }
        let rank = (10 - degree) as usize;
        let mut gram = vec![0; rank * rank];
        gram[0] = 1;
        for i in 1..rank {
            gram[i * rank + i] = -1;
        }
        let mut k = vec![1; rank];
        k[0] = -3;
        Ok(PicardLattice {
            rank,
            labels: standard_labels(rank),
            gram,
            canonical: DivisorClass::new(&k),
            diagonal: true,
            standard: true,
        })
    }

    /// Hirzebruch surface F_k in the basis (F, S) with F^2 = 0, F.S = 1, S^2 = k.
    /// The quadric F_0 uses the two rulings (H1, H2).
    pub fn hirzebruch(k: i32) -> Result<Self> {
        if k < 0 {
            return input(format!("Hirzebruch index {k} is negative"));
        }
        let (labels, canonical) = if k == 0 {
            (
                vec!["H1".to_string(), "H2".to_string()],
                DivisorClass::new(&[-2, -2]),
            )
        } else {
            (
                vec!["F".to_string(), "S".to_string()],
                DivisorClass::new(&[k - 2, -2]),
            )
        };
        Self::custom(labels, vec![0, 1, 1, k], canonical)
    }

    pub fn custom(labels: Vec<String>, gram: Vec<i32>, canonical: DivisorClass) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 || rank > MAX_RANK {
            return input(format!("rank {rank} outside 1..={MAX_RANK}"));
        }
        if gram.len() != rank * rank || canonical.rank() != rank {
            return input("gram matrix or canonical class does not match the basis");
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i * rank + j] != gram[j * rank + i] {
                    return input(format!("gram matrix not symmetric at ({i},{j})"));
                }
            }
        }
        let diagonal = (0..rank).all(|i| (0..rank).all(|j| i == j || gram[i * rank + j] == 0));
        Ok(PicardLattice {
            rank,
            labels,
            gram,
            canonical,
            diagonal,
            standard: false,
        })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn canonical(&self) -> DivisorClass {
        self.canonical
    }

    pub fn degree(&self) -> i32 {
        self.intersect(&self.canonical, &self.canonical)
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> i32 {
        self.gram[i * self.rank + j]
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::zero(self.rank)
    }

    pub fn basis(&self, i: usize) -> DivisorClass {
        DivisorClass::basis(self.rank, i)
    }

    #[inline]
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> i32 {
        debug_assert_eq!(a.rank(), self.rank);
        debug_assert_eq!(b.rank(), self.rank);
        let n = self.rank;
        if self.diagonal {
            let mut s = 0;
            for i in 0..n {
                s += self.gram[i * n + i] * a.c[i] * b.c[i];
            }
            s
        } else {
            let mut s = 0;
            for i in 0..n {
                if a.c[i] == 0 {
                    continue;
                }
                let mut row = 0;
                for j in 0..n {
                    row += self.gram[i * n + j] * b.c[j];
                }
                s += a.c[i] * row;
            }
            s
        }
    }

    pub fn checked_intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i32> {
        if a.rank() != self.rank || b.rank() != self.rank {
            return input(format!(
                "class lengths {} and {} do not match lattice rank {}",
                a.rank(),
                b.rank(),
                self.rank
            ));
        }
        Ok(self.intersect(a, b))
    }

    #[inline]
    pub fn square(&self, d: &DivisorClass) -> i32 {
        self.intersect(d, d)
    }

    #[inline]
    pub fn dot_k(&self, d: &DivisorClass) -> i32 {
        self.intersect(d, &self.canonical)
    }

    /// Euler characteristic 1 + D.(D - K)/2.
    pub fn chi(&self, d: &DivisorClass) -> Result<i32> {
        let twice = self.square(d) - self.dot_k(d);
        if twice % 2 != 0 {
            return invariant(format!("D.(D-K) = {twice} is odd for {d:?}"));
        }
        Ok(1 + twice / 2)
    }

    /// Returns D^2 when D^2 + D.K = -2.
    pub fn classify_r(&self, d: &DivisorClass) -> Option<i32> {
        let sq = self.square(d);
        (sq + self.dot_k(d) == -2).then_some(sq)
    }

    /// Signature (positive, negative, null) by symmetric elimination over the rationals.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.rank;
        let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Ratio::from_integer(self.gram[i * n + j] as i64))
                    .collect()
            })
            .collect();
        let (mut pos, mut neg, mut null) = (0, 0, 0);
        let mut k = 0;
        while k < n {
            if m[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    // row/col k += row/col j makes the pivot 2*m[k][j] + m[j][j] = 2*m[k][j]
                    for c in 0..n {
                        let v = m[j][c];
                        m[k][c] += v;
                    }
                    for r in 0..n {
                        let v = m[r][j];
                        m[r][k] += v;
                    }
                } else {
                    null += 1;
                    k += 1;
                    continue;
                }
            }
            let p = m[k][k];
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = m[i][k] / p;
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = m[k][c];
                    m[i][c] -= f * v;
                }
                for r in 0..n {
                    let v = m[r][k];
                    m[r][i] -= f * v;
                }
            }
            k += 1;
        }
        (pos, neg, null)
    }

    pub fn render(&self, d: &DivisorClass) -> String {
        render(d.coeffs(), &self.labels)
    }

    /// Parses expressions such as `2L-E1-E2`, `L123` (= L-E1-E2-E3), `E45` (= E4+E5),
    /// `-K`, or sums of basis labels for non-standard lattices.
    pub fn parse(&self, text: &str) -> Result<DivisorClass> {
        let cleaned: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '_' | '{' | '}'))
            .collect();
        if cleaned.is_empty() {
            return input("empty divisor expression");
        }
        let mut total = self.zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let mut sign = 1;
            while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                rest = &rest[1..];
            }
            let end = rest[1.min(rest.len())..]
                .find(['+', '-'])
                .map_or(rest.len(), |p| p + 1);
            let term = &rest[..end];
            rest = &rest[end..];
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let coef: i32 = if digits == 0 {
                1
            } else {
                term[..digits]
                    .parse()
                    .map_err(|_| Error::Input(format!("bad coefficient in {term}")))?
            };
            let sym = &term[digits..];
            let d = if sym.is_empty() {
                if coef == 0 {
                    self.zero()
                } else {
                    return input(format!("missing symbol in term `{term}`"));
                }
            } else {
                self.parse_symbol(sym)?
            };
            total += (sign * coef) * d;
        }
        Ok(total)
    }

    fn parse_symbol(&self, sym: &str) -> Result<DivisorClass> {
        if sym == "K" {
            return Ok(self.canonical);
        }
        if let Some(i) = self.labels.iter().position(|l| l == sym) {
            return Ok(self.basis(i));
        }
        if self.standard {
            let head = &sym[..1];
            let idx = &sym[1..];
            if (head == "L" || head == "E")
                && idx.chars().all(|c| c.is_ascii_digit())
                && !idx.is_empty()
            {
                let mut e = self.zero();
                for ch in idx.chars() {
                    let i = ch.to_digit(10).unwrap() as usize;
                    if i == 0 || i >= self.rank {
                        return input(format!("index {i} out of range in `{sym}`"));
                    }
                    e.c[i] += 1;
                }
                return Ok(if head == "L" { self.basis(0) - e } else { e });
            }
        }
        input(format!("unknown symbol `{sym}`"))
    }

    /// All r-classes for r in {-2, -1, 0, 1}, sorted lexicographically.
    pub fn enumerate_classes(&self, r: i32) -> Result<Vec<DivisorClass>> {
        if !(-2..=1).contains(&r) {
            return input(format!("enumeration supports r in -2..=1, got {r}"));
        }
        let mut bound = 4;
        loop {
            let found = if self.standard {
                self.search_standard(r, bound)
            } else {
                self.search_box(r, bound)
            };
            let touches = found
                .iter()
                .any(|d| d.coeffs().iter().any(|x| x.abs() >= bound));
            if !touches {
                return Ok(found);
            }
            bound += 2;
            if bound > 40 {
                return Err(Error::Resource(format!(
                    "r-class search for r = {r} did not close"
                )));
            }
        }
    }

    // Square and K-degree pin the sum and the sum of squares of the E-coefficients.
    fn search_standard(&self, r: i32, bound: i32) -> Vec<DivisorClass> {
        let s = self.rank - 1;
        let mut out = Vec::new();
        let mut buf = vec![0i32; self.rank];
        for a0 in -bound..=bound {
            let sum = r + 2 - 3 * a0;
            let sq = a0 * a0 - r;
            if sq < 0 {
                continue;
            }
            buf[0] = a0;
            fill_entries(&mut buf, 1, s, sum, sq, bound, &mut out);
        }
        out.sort();
        out
    }

    fn search_box(&self, r: i32, bound: i32) -> Vec<DivisorClass> {
        let n = self.rank;
        let mut out = Vec::new();
        let mut cur = vec![-bound; n];
        loop {
            let d = DivisorClass::new(&cur);
            if self.classify_r(&d) == Some(r) {
                out.push(d);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -bound;
            }
        }
    }
}

fn fill_entries(
    buf: &mut [i32],
    pos: usize,
    remaining: usize,
    sum: i32,
    sq: i32,
    bound: i32,
    out: &mut Vec<DivisorClass>,
) {
    if remaining == 0 {
        if sum == 0 && sq == 0 {
            out.push(DivisorClass::new(buf));
        }
        return;
    }
    // Cauchy-Schwarz: sum^2 <= remaining * sq
    if sum * sum > remaining as i32 * sq {
        return;
    }
    let lim = ((sq as f64).sqrt() as i32 + 1).min(bound);
    for a in -lim..=lim {
        if a * a > sq {
            continue;
        }
        buf[pos] = a;
        fill_entries(buf, pos + 1, remaining - 1, sum - a, sq - a * a, bound, out);
    }
    buf[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(d: i32) -> PicardLattice {
        PicardLattice::standard(d).unwrap()
    }

    #[test]
    fn basic_products() {
        let x = lat(7);
        let l = x.parse("L").unwrap();
        let e1 = x.parse("E1").unwrap();
        let e2 = x.parse("E2").unwrap();
        assert_eq!(x.intersect(&l, &l), 1);
        assert_eq!(x.intersect(&e1, &e2), 0);
        let line = x.parse("L-E1-E2").unwrap();
        assert_eq!(x.intersect(&line, &x.canonical()), -1);
    }

    #[test]
    fn mismatched_rank_is_input_error() {
        let x = lat(7);
        let a = DivisorClass::new(&[1, 0]);
        assert!(matches!(
            x.checked_intersect(&a, &x.canonical()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn euler_characteristic() {
        for d in 1..=9 {
            let x = lat(d);
            assert_eq!(x.chi(&x.zero()).unwrap(), 1);
            assert_eq!(x.chi(&-x.canonical()).unwrap(), d + 1);
            if d < 9 {
                assert_eq!(x.chi(&x.basis(1)).unwrap(), 1);
            }
        }
    }

    #[test]
    fn classify_small_classes() {
        let x = lat(6);
        assert_eq!(x.classify_r(&x.parse("E1").unwrap()), Some(-1));
        assert_eq!(x.classify_r(&x.parse("E1-E2").unwrap()), Some(-2));
        assert_eq!(x.classify_r(&x.parse("L").unwrap()), Some(1));
        // 4 - 6 = -2: twice the line class is a 4-class
        assert_eq!(x.classify_r(&x.parse("2L").unwrap()), Some(4));
        assert_eq!(x.classify_r(&x.parse("3L").unwrap()), None);
    }

    #[test]
    fn class_counts_per_degree() {
        let expected = [
            (7, 2, 3),
            (6, 8, 6),
            (5, 20, 10),
            (4, 40, 16),
            (3, 72, 27),
            (2, 126, 56),
            (1, 240, 240),
        ];
        for (d, roots, lines) in expected {
            let x = lat(d);
            assert_eq!(
                x.enumerate_classes(-2).unwrap().len(),
                roots,
                "roots, degree {d}"
            );
            assert_eq!(
                x.enumerate_classes(-1).unwrap().len(),
                lines,
                "lines, degree {d}"
            );
        }
    }

    #[test]
    fn degree_seven_lines() {
        let x = lat(7);
        let mut want: Vec<_> = ["E1", "E2", "L12"]
            .iter()
            .map(|s| x.parse(s).unwrap())
            .collect();
        want.sort();
        assert_eq!(x.enumerate_classes(-1).unwrap(), want);
    }

    #[test]
    fn enumeration_is_sorted_and_rejects_other_r() {
        let x = lat(3);
        let c = x.enumerate_classes(0).unwrap();
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(x.enumerate_classes(2), Err(Error::Input(_))));
    }

    #[test]
    fn inventories_have_expected_invariants() {
        for d in 1..=7 {
            let x = lat(d);
            for c in x.enumerate_classes(-1).unwrap() {
                assert_eq!((x.square(&c), x.dot_k(&c)), (-1, -1));
            }
            for r in x.enumerate_classes(-2).unwrap() {
                assert_eq!((x.square(&r), x.dot_k(&r)), (-2, 0));
            }
        }
    }

    #[test]
    fn complementary_class_lemma() {
        for d in 1..=7 {
            let x = lat(d);
            let mk = -x.canonical();
            for r in -2..=1 {
                for c in x.enumerate_classes(r).unwrap() {
                    let other = x.classify_r(&(mk - c)).expect("complement is a class");
                    assert_eq!(r + other, d - 4);
                }
            }
        }
    }

    #[test]
    fn big_class_meets_lines_nonnegatively() {
        // (d-2)-classes are exactly -K - R for (-2)-classes R
        for d in 2..=7 {
            let x = lat(d);
            let mk = -x.canonical();
            let lines = x.enumerate_classes(-1).unwrap();
            let mut bigs: Vec<DivisorClass> = Vec::new();
            for r in -2..=1 {
                for c in x.enumerate_classes(r).unwrap() {
                    let comp = mk - c;
                    if x.classify_r(&comp) == Some(d - 2) {
                        bigs.push(comp);
                    }
                }
            }
            assert!(!bigs.is_empty());
            for b in &bigs {
                for c in &lines {
                    assert!(x.intersect(b, c) >= 0, "degree {d}: {b} . {c} < 0");
                }
            }
        }
        let x = lat(1);
        let lines = x.enumerate_classes(-1).unwrap();
        for b in &lines {
            for c in &lines {
                if b != c {
                    assert!(x.intersect(b, c) >= 0);
                }
            }
        }
    }

    #[test]
    fn shifting_by_a_conic() {
        for d in 2..=7 {
            let x = lat(d);
            let conics = x.enumerate_classes(0).unwrap();
            for r in -2..=1 {
                for dc in x.enumerate_classes(r).unwrap() {
                    for f in conics.iter().filter(|f| x.intersect(&dc, f) == 1) {
                        for m in 0..4 {
                            assert_eq!(x.classify_r(&(dc + m * *f)), Some(r + 2 * m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signatures() {
        for d in 1..=9 {
            assert_eq!(lat(d).signature(), (1, (9 - d) as usize, 0));
        }
        let f0 = PicardLattice::hirzebruch(0).unwrap();
        assert_eq!(f0.signature(), (1, 1, 0));
        assert_eq!(f0.degree(), 8);
        for k in 1..5 {
            let f = PicardLattice::hirzebruch(k).unwrap();
            assert_eq!(f.signature(), (1, 1, 0));
            assert_eq!(f.degree(), 8);
        }
    }

    #[test]
    fn parse_and_render() {
        let x = lat(2);
        let d = x.parse("2L-E1-E2-E5-E7").unwrap();
        assert_eq!(d.coeffs(), &[2, -1, -1, 0, 0, -1, 0, -1]);
        assert_eq!(serde_json::to_string(&d).unwrap(), "[2,-1,-1,0,0,-1,0,-1]");
        let back: DivisorClass = serde_json::from_str("[2,-1,-1,0,0,-1,0,-1]").unwrap();
        assert_eq!(back, d);
        assert_eq!(d.to_string(), "2L-E1-E2-E5-E7");
        assert_eq!(x.parse("L_{123}").unwrap(), x.parse("L-E1-E2-E3").unwrap());
        assert_eq!(x.parse("-K").unwrap(), -x.canonical());
        assert_eq!(
            x.parse("3L-E1234567-E2").unwrap().coeffs(),
            &[3, -1, -2, -1, -1, -1, -1, -1]
        );
        assert!(x.parse("E9").is_err());
        assert!(x.parse("Q").is_err());
    }

    fn class_strategy(rank: usize) -> impl Strategy<Value = DivisorClass> {
        proptest::collection::vec(-6i32..=6, rank).prop_map(|v| DivisorClass::new(&v))
    }

    proptest! {
        #[test]
        fn form_is_symmetric_and_bilinear(a in class_strategy(8), b in class_strategy(8), c in class_strategy(8), m in -5i32..5) {
            let x = lat(2);
            prop_assert_eq!(x.intersect(&a, &b), x.intersect(&b, &a));
            prop_assert_eq!(x.intersect(&(a + m * c), &b), x.intersect(&a, &b) + m * x.intersect(&c, &b));
        }

        #[test]
        fn chi_is_always_integral(a in class_strategy(9)) {
            prop_assert!(lat(1).chi(&a).is_ok());
        }

        #[test]
        fn pack_preserves_order(a in class_strategy(6), b in class_strategy(6)) {
            prop_assert_eq!(a.cmp(&b), a.pack().cmp(&b.pack()));
        }
    }
}
