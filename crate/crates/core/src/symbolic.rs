//! Kneading sequences, itineraries, and the tail equivalence on the binary
//! shift.
//!
//! Angles are exact rationals, so doubling orbits and semicircle membership
//! never misclassify: landing on a partition boundary is detected exactly
//! and reported as an error, matching the well-definedness hypothesis of
//! the kneading construction.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SymbolicError {
    /// The doubling orbit hit a partition endpoint at this iterate.
    #[error("orbit hits a partition boundary at iterate {index}")]
    OrbitHitsBoundary { index: usize },
    #[error("the critical point does not lie in the Julia set")]
    CriticalNotInJulia,
    #[error("the critical orbit returns to 1/2 at iterate {index}")]
    HitsCritical { index: usize },
    #[error("the reference sequence must be aperiodic")]
    EPeriodic,
    #[error("operation needs eventually-periodic (infinite) sequences")]
    InfiniteSequenceRequired,
    #[error("invalid input: {0}")]
    OutOfRange(&'static str),
    #[error("symbols must be 0 or 1")]
    InvalidSymbol,
}

/// An exact angle `p/q ∈ R/Z`, reduced, with `0 ≤ p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Angle {
    /// Denominators are capped at 2^31 so all membership arithmetic fits
    /// comfortably in i128.
    pub fn new(num: u64, den: u64) -> Result<Self, SymbolicError> {
        if den == 0 || den > 1 << 31 {
            return Err(SymbolicError::OutOfRange("denominator must be in 1..=2^31"));
        }
        let num = num % den;
        let g = gcd(num, den).max(1);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Exact doubling `θ ↦ 2θ mod 1`.
    pub fn double(&self) -> Angle {
        let num = (2 * self.num) % self.den;
        let g = gcd(num, self.den).max(1);
        Angle { num: num / g, den: self.den / g }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Where an angle sits relative to the two semicircles cut out by
/// `{θ/2, (θ+1)/2}`; `Zero` is the side containing `θ`.
enum Semicircle {
    Zero,
    One,
    Boundary,
}

/// Classify `x` against the partition of the circle by `{θ/2, (θ+1)/2}`:
/// the `Zero` side is the open arc `(θ/2, θ/2 + 1/2)`, which contains `θ`.
fn classify(theta: Angle, x: Angle) -> Semicircle {
    // frac = (x − θ/2) mod 1, exactly, as num/den
    let num = (x.num as i128) * 2 * (theta.den as i128) - (theta.num as i128) * (x.den as i128);
    let den = 2 * (theta.den as i128) * (x.den as i128);
    let num = num.rem_euclid(den);
    if num == 0 || 2 * num == den {
        Semicircle::Boundary
    } else if 2 * num < den {
        Semicircle::Zero
    } else {
        Semicircle::One
    }
}

/// A finite binary word, or an eventually periodic sequence
/// `head (tail)^∞` in canonical form (shortest period, shortest head).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    head: Vec<u8>,
    tail: Option<Vec<u8>>,
}

fn check_symbols(word: &[u8]) -> Result<(), SymbolicError> {
    if word.iter().all(|&s| s <= 1) {
        Ok(())
    } else {
        Err(SymbolicError::InvalidSymbol)
    }
}

fn minimal_period(tail: &[u8]) -> usize {
    'outer: for p in 1..=tail.len() {
        if !tail.len().is_multiple_of(p) {
            continue;
        }
        for i in p..tail.len() {
            if tail[i] != tail[i - p] {
                continue 'outer;
            }
        }
        return p;
    }
    tail.len()
}

impl SymbolSequence {
    pub fn finite(word: Vec<u8>) -> Result<Self, SymbolicError> {
        check_symbols(&word)?;
        Ok(Self { head: word, tail: None })
    }

    /// `head (tail)^∞`, canonicalized. `tail` must be non-empty.
    pub fn eventually_periodic(head: Vec<u8>, tail: Vec<u8>) -> Result<Self, SymbolicError> {
        check_symbols(&head)?;
        check_symbols(&tail)?;
        if tail.is_empty() {
            return Err(SymbolicError::OutOfRange("period must be non-empty"));
        }
        let mut s = Self { head, tail: Some(tail) };
        s.canonicalize();
        Ok(s)
    }

    pub fn constant(symbol: u8) -> Result<Self, SymbolicError> {
        Self::eventually_periodic(vec![], vec![symbol])
    }

    fn canonicalize(&mut self) {
        if let Some(tail) = &mut self.tail {
            let p = minimal_period(tail);
            tail.truncate(p);
            while let (Some(&h), Some(&t)) = (self.head.last(), tail.last()) {
                if h != t {
                    break;
                }
                self.head.pop();
                tail.rotate_right(1);
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// Symbol at position `n`; `None` past the end of a finite word.
    pub fn get(&self, n: usize) -> Option<u8> {
        if n < self.head.len() {
            return Some(self.head[n]);
        }
        self.tail
            .as_ref()
            .map(|t| t[(n - self.head.len()) % t.len()])
    }

    /// Left shift: drop the first symbol.
    pub fn shift(&self) -> SymbolSequence {
        let mut out = self.clone();
        if !out.head.is_empty() {
            out.head.remove(0);
        } else if let Some(tail) = &mut out.tail {
            tail.rotate_left(1);
        }
        out.canonicalize();
        out
    }

    /// `σⁿ(e) ≠ e` for all `n ≥ 1`. In canonical form this is exactly
    /// "the head is non-empty": a shift-periodic sequence is purely
    /// periodic. Finite words are not aperiodic points of the shift space.
    pub fn is_aperiodic(&self) -> bool {
        self.tail.is_some() && !self.head.is_empty()
    }

    /// First `n` symbols (shorter for a finite word).
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map_while(|i| self.get(i)).collect()
    }
}

impl fmt::Display for SymbolSequence {
    /// `head,(period)` rendering, e.g. `0,(1)` for `0111…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", head.join(","))?;
        if let Some(tail) = &self.tail {
            if !self.head.is_empty() {
                write!(f, ",")?;
            }
            let t: Vec<String> = tail.iter().map(|s| s.to_string()).collect();
            write!(f, "({})", t.join(","))?;
        }
        Ok(())
    }
}

/// First `n` symbols of the kneading sequence of `θ` under doubling:
/// symbol k is 0 iff the k-th iterate lies in the open semicircle containing
/// `θ`. Exact; a boundary hit among the first `n` iterates is an error.
pub fn kneading_sequence(theta: Angle, n: usize) -> Result<SymbolSequence, SymbolicError> {
    let mut word = Vec::with_capacity(n);
    let mut x = theta;
    for k in 0..n {
        match classify(theta, x) {
            Semicircle::Zero => word.push(0),
            Semicircle::One => word.push(1),
            Semicircle::Boundary => return Err(SymbolicError::OrbitHitsBoundary { index: k }),
        }
        x = x.double();
    }
    SymbolSequence::finite(word)
}

/// First `n` symbols of the critical itinerary of the logistic map:
/// symbol k is 1 iff `f^{1+k}(1/2)` lands in `[0, 1/2]`, 0 for `[1/2, 1]`,
/// error if it lands exactly on 1/2.
///
/// The critical point lies in the Julia set only at `μ = 4` on the real
/// family considered here, so other parameters are rejected.
pub fn critical_itinerary(mu: f64, n: usize) -> Result<SymbolSequence, SymbolicError> {
    if mu != 4.0 {
        return Err(SymbolicError::CriticalNotInJulia);
    }
    let mut word = Vec::with_capacity(n);
    let mut x = mu * 0.5 * (1.0 - 0.5); // f(1/2)
    for k in 0..n {
        if x == 0.5 {
            return Err(SymbolicError::HitsCritical { index: k });
        }
        word.push(if x < 0.5 { 1 } else { 0 });
        x = mu * x * (1.0 - x);
    }
    SymbolSequence::finite(word)
}

/// The equivalence used to glue the shift space at a kneading sequence:
/// `a ~ s` iff `a = s`, or there is `k ≥ 0` with `a_n = s_n` for all
/// `n ≠ k` and `σ^{k+1}(a) = σ^{k+1}(s) = e`. Decidable because an
/// aperiodic `e` can only appear as a shifted tail within the preperiodic
/// part.
pub fn tail_equivalent(
    a: &SymbolSequence,
    s: &SymbolSequence,
    e: &SymbolSequence,
) -> Result<bool, SymbolicError> {
    if e.is_finite() {
        return Err(SymbolicError::InfiniteSequenceRequired);
    }
    if !e.is_aperiodic() {
        return Err(SymbolicError::EPeriodic);
    }
    if a.is_finite() || s.is_finite() {
        return Err(SymbolicError::InfiniteSequenceRequired);
    }
    if a == s {
        return Ok(true);
    }
    let kmax = a.head_len().max(s.head_len()) + 1;
    let mut shift_a = a.shift();
    let mut shift_s = s.shift();
    let mut prefix_ok = true;
    for k in 0..=kmax {
        if k > 0 {
            prefix_ok = prefix_ok && a.get(k - 1) == s.get(k - 1);
            if !prefix_ok {
                break;
            }
        }
        if shift_a == *e && shift_s == *e {
            return Ok(true);
        }
        shift_a = shift_a.shift();
        shift_s = shift_s.shift();
    }
    Ok(false)
}

/// Cylinder point of the real Cantor coding: apply the inverse branches
/// named by `word` (symbol 1 is the left branch into `[0, 1/2]`, symbol 0
/// the right branch, matching the itinerary convention) to the fixed point
/// `1 − 1/μ`.
pub fn code_point(mu: f64, word: &[u8]) -> Result<f64, SymbolicError> {
    if !(mu > 4.0) || !mu.is_finite() {
        return Err(SymbolicError::OutOfRange("coding needs real mu > 4"));
    }
    check_symbols(word)?;
    let mut x = 1.0 - 1.0 / mu;
    for &s in word.iter().rev() {
        let root = (1.0 - 4.0 * x / mu).sqrt();
        // left branch in conjugate form: exact as x → 0
        x = if s == 1 { 2.0 * x / (mu * (1.0 + root)) } else { (1.0 + root) / 2.0 };
    }
    Ok(x)
}
