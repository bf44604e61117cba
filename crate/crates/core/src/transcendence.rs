//! Bounded non-algebraicity witnesses.
//!
//! For a real value `v`, a degree bound `D` and a height bound `H`, the search
//! shows that no nonzero integer polynomial `p` with `deg p ≤ D` and all
//! `|cᵢ| ≤ H` has `p(v) = 0`. It evaluates every candidate on an enclosure of
//! `v` and requires the result to exclude zero.
//!
//! The `(2H+1)^(D+1) − 1` candidates are scanned in fixed point (`i128`,
//! scale `2^s`) by a depth-first search. It chooses coefficients from the
//! leading one down. A partial sum `P` is discarded with all its completions
//! once `|P|` exceeds what the unassigned coefficients can contribute. The
//! constant term is handled in closed form. The space is split into shards by
//! leading coefficient and the shards are scanned in parallel.
//!
//! Candidates whose fixed-point value straddles zero are re-evaluated with
//! exact rational intervals at higher precision. For values known exactly
//! (rationals and real algebraic numbers) a straddling candidate is decided by
//! exact arithmetic instead.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::RealAlgebraic;
use crate::certified::{self, CertifiedValue};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::poly::IntPolynomial;
use crate::rational::{self, Rational};

/// The value whose algebraicity is being bounded.
#[derive(Debug, Clone)]
pub enum WitnessValue {
    /// `exp(t)`, refinable to any precision.
    Exp(Rational),
    /// An exactly known algebraic number (rationals included).
    Algebraic(RealAlgebraic),
    /// A fixed enclosure that cannot be refined.
    Fixed(CertifiedValue),
}

impl WitnessValue {
    pub fn euler() -> Self {
        WitnessValue::Exp(rational::int(1))
    }

    pub fn enclosure(&self, digits: u32) -> RationalInterval {
        match self {
            WitnessValue::Exp(t) => certified::exp(t, digits).enclosure,
            WitnessValue::Algebraic(a) => a.approx(digits),
            WitnessValue::Fixed(v) => v.enclosure.clone(),
        }
    }

    /// Exact decision of `p(v) = 0`, when the value is known exactly.
    fn vanishes(&self, p: &IntPolynomial) -> Option<bool> {
        let WitnessValue::Algebraic(a) = self else { return None };
        if let Some(q) = a.as_rational() {
            return Some(p.eval_rational(q).is_zero());
        }
        // v is a root of p iff it is a root of gcd(p, defining polynomial)
        let g = p.gcd(a.defining());
        if g.degree().unwrap_or(0) == 0 {
            return Some(false);
        }
        Some(RealAlgebraic::new(&g, a.isolator()).is_ok())
    }

    pub fn describe(&self) -> String {
        match self {
            WitnessValue::Exp(t) => format!("exp({})", rational::to_exact_string(t)),
            WitnessValue::Algebraic(a) => a.to_string(),
            WitnessValue::Fixed(v) => format!("value in {}", v.enclosure),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConfig {
    pub max_degree: usize,
    pub max_height: i64,
    /// Starting precision of the value enclosure.
    pub digits: u32,
    /// Precision cap for re-checking straddling candidates.
    pub digits_cap: u32,
    /// Record wall-clock time (makes the certificate nondeterministic).
    pub timings: bool,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { max_degree: 4, max_height: 100, digits: 60, digits_cap: 240, timings: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// No candidate vanishes at the value.
    Certificate,
    /// Some candidate provably vanishes at the value.
    RootFound,
    /// Some candidate could not be separated from zero at the precision cap.
    Inconclusive,
}

/// Per-shard statistics. The shard holds every candidate with one leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardSummary {
    pub leading: i64,
    /// Lower bound of `|p(v)|` over the shard's candidates (0 if any straddled).
    pub worst_margin: Rational,
    pub nodes: u64,
    pub leaves: u64,
    pub pruned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub outcome: Outcome,
    pub value: String,
    pub max_degree: usize,
    pub max_height: i64,
    pub digits: u32,
    /// Fixed-point scale exponent `s`.
    pub scale_bits: u32,
    pub candidates: u64,
    pub pruned: u64,
    pub shards: Vec<ShardSummary>,
    /// The vanishing polynomial, primitive with positive leading coefficient.
    pub root: Option<IntPolynomial>,
    /// Candidates left undecided (only for an inconclusive outcome).
    pub unresolved: Vec<IntPolynomial>,
    pub elapsed_ms: Option<u128>,
}

impl WitnessCertificate {
    pub fn worst_margin(&self) -> Rational {
        self.shards.iter().map(|s| s.worst_margin.clone()).min().unwrap_or_else(Rational::zero)
    }

    /// Share of the candidate space discarded before reaching the constant term.
    pub fn pruning_effectiveness(&self) -> Rational {
        Rational::new(BigInt::from(self.pruned), BigInt::from(self.candidates.max(1)))
    }
}

impl Serialize for WitnessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let shards: Vec<serde_json::Value> = self
            .shards
            .iter()
            .map(|sh| {
                serde_json::json!({
                    "leading": sh.leading,
                    "worst_margin": rational::to_scientific(&sh.worst_margin, 6),
                    "nodes": sh.nodes,
                    "leaves": sh.leaves,
                    "pruned": sh.pruned,
                })
            })
            .collect();
        let mut v = serde_json::json!({
            "outcome": self.outcome,
            "value": self.value,
            "max_degree": self.max_degree,
            "max_height": self.max_height,
            "digits": self.digits,
            "scale_bits": self.scale_bits,
            "candidates": self.candidates,
            "pruned": self.pruned,
            "pruning_effectiveness": rational::to_decimal_string(&self.pruning_effectiveness(), 6),
            "worst_margin": rational::to_scientific(&self.worst_margin(), 6),
            "shards": shards,
        });
        let map = v.as_object_mut().expect("object");
        if let Some(r) = &self.root {
            map.insert("root".into(), r.to_string().into());
        }
        if !self.unresolved.is_empty() {
            map.insert("unresolved".into(), self.unresolved.iter().map(|p| p.to_string()).collect::<Vec<_>>().into());
        }
        if let Some(ms) = self.elapsed_ms {
            map.insert("elapsed_ms".into(), (ms as u64).into());
        }
        v.serialize(s)
    }
}

/// Powers `v⁰ … v^D` in fixed point, with the tail bounds used for pruning.
struct Fixed {
    scale_bits: u32,
    unit: i128,
    pows: Vec<(i128, i128)>,
    /// `tail[k] = H · Σ_{i ≤ k} max |vⁱ|`: the most that `c_k … c_0` can add.
    tail: Vec<i128>,
}

fn to_i128(q: &BigInt) -> Option<i128> {
    q.to_i128()
}

impl Fixed {
    fn new(enc: &RationalInterval, max_degree: usize, height: i64) -> Result<Self> {
        let pows_q: Vec<RationalInterval> = (0..=max_degree as u32).map(|i| enc.pow(i)).collect();
        let biggest = pows_q.iter().map(|p| rational::to_f64(&p.mag())).fold(1.0f64, f64::max);
        let need = (height as f64 * (max_degree as f64 + 2.0) * biggest).log2().ceil() as i64 + 2;
        let scale_bits = (124 - need).min(120);
        if scale_bits < 16 {
            return Err(Error::ParameterOutOfRange("value too large for the fixed-point search".into()));
        }
        let scale_bits = scale_bits as u32;
        let scale = Rational::from_integer(BigInt::from(1) << scale_bits as usize);
        let mut pows = Vec::with_capacity(pows_q.len());
        for p in &pows_q {
            let lo = to_i128(&rational::floor(&(&p.lo * &scale)));
            let hi = to_i128(&rational::ceil(&(&p.hi * &scale)));
            match (lo, hi) {
                (Some(lo), Some(hi)) => pows.push((lo, hi)),
                _ => return Err(Error::ParameterOutOfRange("fixed-point overflow".into())),
            }
        }
        let mut tail = Vec::with_capacity(pows.len());
        let mut acc: i128 = 0;
        for &(lo, hi) in &pows {
            acc += height as i128 * lo.abs().max(hi.abs());
            tail.push(acc);
        }
        Ok(Fixed { scale_bits, unit: 1i128 << scale_bits, pows, tail })
    }
}

fn mul_iv(c: i64, (lo, hi): (i128, i128)) -> (i128, i128) {
    let c = c as i128;
    if c >= 0 {
        (c * lo, c * hi)
    } else {
        (c * hi, c * lo)
    }
}

struct Shard<'a> {
    fx: &'a Fixed,
    height: i64,
    coeffs: Vec<i64>,
    /// `(2H+1)^k` for k = 0 ..= D+1.
    counts: Vec<u64>,
    nodes: u64,
    leaves: u64,
    pruned: u64,
    worst: i128,
    straddling: Vec<Vec<i64>>,
    overflow: bool,
}

const STRADDLE_CAP: usize = 10_000;

impl Shard<'_> {
    /// Coefficients above `k` are fixed and sum to `[lo, hi]`; choose `c_k … c_0`.
    fn visit(&mut self, k: usize, lo: i128, hi: i128) {
        self.nodes += 1;
        let r = self.fx.tail[k];
        if lo > r || hi < -r {
            self.pruned += self.counts[k + 1];
            self.worst = self.worst.min(if lo > r { lo - r } else { -hi - r });
            return;
        }
        if k == 0 {
            self.leaf(lo, hi);
            return;
        }
        let h = self.height;
        let e = self.fx.pows[k];
        let next = self.fx.tail[k - 1];
        // children whose partial sum can still be cancelled; the ones just
        // outside are visited so their margins are recorded, the rest pruned
        let (cmin, cmax) = if e.0 > 0 {
            (div_floor(-next - hi, e.1) - 1, div_ceil(next - lo, e.0) + 1)
        } else if e.1 < 0 {
            // c·e = (−c)·(−e): reflect the positive case
            (-(div_ceil(next - lo, -e.1) + 1), -(div_floor(-next - hi, -e.0) - 1))
        } else {
            (-(h as i128), h as i128)
        };
        let cmin = cmin.clamp(-(h as i128), h as i128) as i64;
        let cmax = cmax.clamp(-(h as i128), h as i128) as i64;
        if cmin > cmax {
            // the whole range is infeasible: visit the two extreme children
            for c in [-h, h] {
                self.child(k, c, lo, hi);
            }
            self.pruned += (2 * h as u64 - 1) * self.counts[k];
            return;
        }
        for c in cmin..=cmax {
            self.child(k, c, lo, hi);
        }
        let skipped = (2 * h + 1) as u64 - (cmax - cmin + 1) as u64;
        self.pruned += skipped * self.counts[k];
    }

    fn child(&mut self, k: usize, c: i64, lo: i128, hi: i128) {
        self.coeffs[k] = c;
        let (a, b) = mul_iv(c, self.fx.pows[k]);
        self.visit(k - 1, lo + a, hi + b);
        self.coeffs[k] = 0;
    }

    fn leaf(&mut self, lo: i128, hi: i128) {
        self.leaves += 1;
        let u = self.fx.unit;
        let h = self.height as i128;
        let mid = (lo + hi) / 2;
        let centre = (-(mid + u / 2)).div_euclid(u).clamp(-h, h);
        let picks = [(centre - 1).max(-h), centre, (centre + 1).min(h)];
        let mut last = None;
        for c0 in picks {
            if last == Some(c0) {
                continue;
            }
            last = Some(c0);
            let (vlo, vhi) = (lo + c0 * u, hi + c0 * u);
            if vlo <= 0 && vhi >= 0 {
                if c0 == 0 && self.coeffs.iter().all(|&c| c == 0) {
                    continue; // the zero polynomial
                }
                self.worst = 0;
                if self.straddling.len() < STRADDLE_CAP {
                    let mut p = self.coeffs.clone();
                    p[0] = c0 as i64;
                    self.straddling.push(p);
                } else {
                    self.overflow = true;
                }
            } else {
                self.worst = self.worst.min(vlo.abs().min(vhi.abs()));
            }
        }
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

fn normalize(p: &IntPolynomial) -> IntPolynomial {
    let q = p.primitive_part();
    if q.leading_coeff().is_negative() {
        q.neg()
    } else {
        q
    }
}

/// Searches the bounded candidate space for a polynomial vanishing at `value`.
pub fn transcendence_witness(value: &WitnessValue, cfg: &WitnessConfig) -> Result<WitnessCertificate> {
    if cfg.max_degree == 0 || cfg.max_height < 1 {
        return Err(Error::ParameterOutOfRange("need max_degree >= 1 and max_height >= 1".into()));
    }
    let side = 2 * cfg.max_height as u64 + 1;
    let mut counts = vec![1u64];
    for _ in 0..=cfg.max_degree {
        let next = counts.last().unwrap().checked_mul(side);
        counts.push(next.ok_or_else(|| Error::ParameterOutOfRange("candidate count overflows".into()))?);
    }
    let start = Instant::now();
    let enc = value.enclosure(cfg.digits);
    let fx = Fixed::new(&enc, cfg.max_degree, cfg.max_height)?;
    let d = cfg.max_degree;
    let h = cfg.max_height;
    let shards: Vec<Shard> = (-h..=h)
        .into_par_iter()
        .map(|lead| {
            let mut sh = Shard {
                fx: &fx,
                height: h,
                coeffs: vec![0; d + 1],
                counts: counts.clone(),
                nodes: 0,
                leaves: 0,
                pruned: 0,
                worst: i128::MAX,
                straddling: Vec::new(),
                overflow: false,
            };
            sh.coeffs[d] = lead;
            let (lo, hi) = mul_iv(lead, fx.pows[d]);
            sh.visit(d - 1, lo, hi);
            sh
        })
        .collect();

    let overflow = shards.iter().any(|s| s.overflow);
    let mut candidates: BTreeSet<(usize, Vec<BigInt>)> = BTreeSet::new();
    for s in &shards {
        for c in &s.straddling {
            let p = normalize(&IntPolynomial::from_i64s(c));
            candidates.insert((p.degree().unwrap_or(0), p.coeffs().to_vec()));
        }
    }
    let mut digits_used = cfg.digits;
    let mut roots = Vec::new();
    let mut unresolved = Vec::new();
    for (_, coeffs) in &candidates {
        let p = IntPolynomial::new(coeffs.clone());
        match value.vanishes(&p) {
            Some(true) => roots.push(p),
            Some(false) => {}
            None => {
                let mut digits = cfg.digits;
                let mut cleared = false;
                while digits < cfg.digits_cap {
                    digits = (digits * 2).min(cfg.digits_cap);
                    digits_used = digits_used.max(digits);
                    if !p.eval_interval(&value.enclosure(digits)).contains_zero() {
                        cleared = true;
                        break;
                    }
                }
                if !cleared {
                    unresolved.push(p);
                }
            }
        }
    }
    let outcome = if !roots.is_empty() {
        Outcome::RootFound
    } else if overflow || !unresolved.is_empty() {
        Outcome::Inconclusive
    } else {
        Outcome::Certificate
    };
    let unit = Rational::from_integer(BigInt::from(fx.unit));
    let summaries = shards
        .iter()
        .zip(-h..=h)
        .map(|(s, lead)| ShardSummary {
            leading: lead,
            worst_margin: if s.worst == i128::MAX {
                Rational::zero()
            } else {
                Rational::from_integer(BigInt::from(s.worst)) / &unit
            },
            nodes: s.nodes,
            leaves: s.leaves,
            pruned: s.pruned,
        })
        .collect();
    Ok(WitnessCertificate {
        outcome,
        value: value.describe(),
        max_degree: d,
        max_height: h,
        digits: digits_used,
        scale_bits: fx.scale_bits,
        candidates: counts[d + 1] - 1,
        pruned: shards.iter().map(|s| s.pruned).sum(),
        shards: summaries,
        root: roots.into_iter().next(),
        unresolved,
        elapsed_ms: cfg.timings.then(|| start.elapsed().as_millis()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn small(d: usize, h: i64) -> WitnessConfig {
        WitnessConfig { max_degree: d, max_height: h, digits: 30, digits_cap: 120, timings: false }
    }

    fn accounted(c: &WitnessCertificate) -> bool {
        let side = 2 * c.max_height as u64 + 1;
        let leaves: u64 = c.shards.iter().map(|s| s.leaves).sum();
        c.pruned + leaves * side == c.candidates + 1
    }

    #[test]
    fn sqrt_two_is_caught() {
        let v = WitnessValue::Algebraic(RealAlgebraic::from_int(2).sqrt().unwrap());
        let c = transcendence_witness(&v, &small(2, 2)).unwrap();
        assert_eq!(c.outcome, Outcome::RootFound);
        assert_eq!(c.root, Some(IntPolynomial::from_i64s(&[-2, 0, 1])));
        assert!(accounted(&c));
    }

    #[test]
    fn rational_is_caught() {
        let v = WitnessValue::Algebraic(RealAlgebraic::from_rational(ratio(3, 2)));
        let c = transcendence_witness(&v, &small(1, 3)).unwrap();
        assert_eq!(c.outcome, Outcome::RootFound);
        assert_eq!(c.root, Some(IntPolynomial::from_i64s(&[-3, 2])));
        assert_eq!(c.candidates, 48);
    }

    #[test]
    fn fixed_enclosure_of_an_algebraic_value_is_never_certified() {
        let enc = RealAlgebraic::from_int(2).sqrt().unwrap().approx(40);
        let v = WitnessValue::Fixed(CertifiedValue { enclosure: enc, terms: 0, remainder_bound: Rational::zero() });
        let c = transcendence_witness(&v, &small(2, 2)).unwrap();
        assert_eq!(c.outcome, Outcome::Inconclusive);
        assert!(c.unresolved.contains(&IntPolynomial::from_i64s(&[-2, 0, 1])));
    }

    #[test]
    fn euler_number_small_bounds() {
        let c = transcendence_witness(&WitnessValue::euler(), &small(3, 10)).unwrap();
        assert_eq!(c.outcome, Outcome::Certificate);
        assert!(c.worst_margin() > Rational::zero());
        assert!(accounted(&c));
        assert!(c.pruned > 0);
        assert_eq!(c.candidates, 21u64.pow(4) - 1);
    }

    fn fixed(enclosure: RationalInterval) -> WitnessValue {
        WitnessValue::Fixed(CertifiedValue { enclosure, terms: 0, remainder_bound: Rational::zero() })
    }

    #[test]
    fn margins_match_direct_evaluation() {
        // brute force over degree <= 2, height 3, on values of both signs and
        // magnitudes on either side of 1
        let e = certified::exp(&int(1), 40).enclosure;
        let inv_e = certified::exp(&int(-1), 40).enclosure;
        for enc in [e.clone(), e.neg(), inv_e.neg(), inv_e] {
            let mut worst: Option<Rational> = None;
            for a in -3..=3i64 {
                for b in -3..=3i64 {
                    for c in -3..=3i64 {
                        if a == 0 && b == 0 && c == 0 {
                            continue;
                        }
                        let p = IntPolynomial::from_i64s(&[c, b, a]);
                        let m = p.eval_interval(&enc).mig();
                        worst = Some(worst.map_or(m.clone(), |w| w.min(m)));
                    }
                }
            }
            let cert = transcendence_witness(&fixed(enc.clone()), &small(2, 3)).unwrap();
            let worst = worst.unwrap();
            assert_eq!(cert.outcome, Outcome::Certificate, "{enc}");
            // fixed-point rounding only loosens the bound slightly
            assert!(cert.worst_margin() <= worst);
            assert!(worst - cert.worst_margin() < rational::dyadic_unit(60));
            assert!(accounted(&cert));
        }
    }

    #[test]
    fn negative_values_are_caught() {
        let cases = [
            (WitnessValue::Algebraic(RealAlgebraic::from_rational(ratio(-6, 5))), 2, 10, vec![6, 5]),
            (WitnessValue::Algebraic(RealAlgebraic::from_rational(ratio(-3, 2))), 2, 3, vec![3, 2]),
            (WitnessValue::Algebraic(RealAlgebraic::from_int(3).sqrt().unwrap().neg()), 3, 3, vec![-3, 0, 1]),
            (WitnessValue::Algebraic(RealAlgebraic::from_rational(ratio(-1, 7))), 1, 7, vec![1, 7]),
        ];
        for (v, d, h, root) in cases {
            let c = transcendence_witness(&v, &small(d, h)).unwrap();
            assert_eq!(c.outcome, Outcome::RootFound, "{}", v.describe());
            assert_eq!(c.root, Some(IntPolynomial::from_i64s(&root)), "{}", v.describe());
            assert!(accounted(&c));
        }
    }

    #[test]
    fn rejects_degenerate_bounds() {
        assert!(transcendence_witness(&WitnessValue::euler(), &small(0, 3)).is_err());
        assert!(transcendence_witness(&WitnessValue::euler(), &small(2, 0)).is_err());
    }

    #[test]
    fn serializes_without_timings() {
        let c = transcendence_witness(&WitnessValue::euler(), &small(1, 2)).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["outcome"], "certificate");
        assert!(v.get("elapsed_ms").is_none());
        assert_eq!(v["shards"].as_array().unwrap().len(), 5);
    }
}
