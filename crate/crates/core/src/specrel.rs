//! Explicit models of special relativity over an ordered field, and sampled
//! checkers for the light, event, self-location and symmetric-distance
//! axioms.
//!
//! Every inertial observer `m` stores a Poincaré map `T_m` from its own
//! coordinates into one shared world frame. Observer `m` sees body `b` at `x̄`
//! when `T_m(x̄)` lies on `b`'s world-frame worldline. The worldview
//! transformation from `m` to `k` is then `T_k⁻¹ ∘ T_m` by definition.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;
use crate::field::{FieldContext, FieldElement};
use crate::minkowski::{self, PoincareMap, SpacetimePoint};
use crate::rational::{self, Rational};
use crate::report::{AxiomReport, LawCheck, Verdict};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BodyId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub enum BodyKind {
    /// Maps the observer's coordinates to the world frame.
    Inertial(PoincareMap),
    /// The world-frame line `point + λ·direction`.
    Photon { point: SpacetimePoint, direction: SpacetimePoint },
    /// The world-frame hyperbola `(x_axis − c_axis)² − (x₁ − c₁)² = a²` with
    /// `x_axis > c_axis` and the other spatial coordinates equal to `c`'s.
    Accelerated { center: SpacetimePoint, accel: FieldElement, axis: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub id: BodyId,
    pub name: String,
    pub kind: BodyKind,
}

impl Body {
    pub fn is_inertial(&self) -> bool {
        matches!(self.kind, BodyKind::Inertial(_))
    }

    pub fn is_photon(&self) -> bool {
        matches!(self.kind, BodyKind::Photon { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhotonPolicy {
    /// Every lightlike line is a photon; membership is decided in closed form.
    #[default]
    Synthetic,
    /// Only registered photons exist.
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldviewModel {
    ctx: FieldContext,
    dim: usize,
    bodies: Vec<Body>,
    /// `T_b⁻¹` for inertial bodies, computed once at registration.
    inverses: Vec<Option<PoincareMap>>,
    policy: PhotonPolicy,
}

/// The registered bodies an observer sees at one coordinate point.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Event {
    pub bodies: BTreeSet<BodyId>,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.bodies.iter().map(|b| format!("#{}", b.0)).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

/// Build a model whose inertial observers carry the given world-frame maps.
/// One of them must be the identity.
pub fn build_model(
    ctx: FieldContext,
    dim: usize,
    observers: Vec<PoincareMap>,
    policy: PhotonPolicy,
) -> Result<WorldviewModel> {
    if dim < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: dim });
    }
    let mut model = WorldviewModel { ctx, dim, bodies: Vec::new(), inverses: Vec::new(), policy };
    for (i, map) in observers.into_iter().enumerate() {
        model.add_observer(format!("m{i}"), map)?;
    }
    if !model.bodies.iter().any(|b| matches!(&b.kind, BodyKind::Inertial(t) if t.is_identity())) {
        return Err(Error::InvalidMap("the model needs an observer whose map is the identity".into()));
    }
    Ok(model)
}

impl WorldviewModel {
    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn policy(&self) -> PhotonPolicy {
        self.policy
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn body(&self, id: BodyId) -> &Body {
        &self.bodies[id.0]
    }

    pub fn inertial_observers(&self) -> Vec<BodyId> {
        self.bodies.iter().filter(|b| b.is_inertial()).map(|b| b.id).collect()
    }

    fn check_point(&self, x: &SpacetimePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if x.context() != self.ctx {
            return Err(Error::ContextMismatch(self.ctx.name().into(), x.context().name().into()));
        }
        Ok(())
    }

    fn push(&mut self, name: String, kind: BodyKind) -> BodyId {
        let id = BodyId(self.bodies.len());
        self.inverses.push(match &kind {
            BodyKind::Inertial(t) => Some(t.invert()),
            _ => None,
        });
        self.bodies.push(Body { id, name, kind });
        id
    }

    pub fn add_observer(&mut self, name: impl Into<String>, map: PoincareMap) -> Result<BodyId> {
        self.check_point(map.translation())?;
        Ok(self.push(name.into(), BodyKind::Inertial(map)))
    }

    /// Register the photon through `point` with lightlike `direction`.
    pub fn add_photon(&mut self, point: SpacetimePoint, direction: SpacetimePoint) -> Result<BodyId> {
        self.check_point(&point)?;
        self.check_point(&direction)?;
        if direction.time().is_zero() || !minkowski::minkowski_sq(&direction).is_zero() {
            return Err(Error::InvalidModel(format!("photon direction {direction} is not lightlike")));
        }
        let name = format!("p{}", self.bodies.len());
        Ok(self.push(name, BodyKind::Photon { point, direction }))
    }

    /// Register a body moving along an arbitrary line with no checks; used to
    /// build faulty models for testing the checkers.
    #[doc(hidden)]
    pub fn inject_photon_unchecked(&mut self, point: SpacetimePoint, direction: SpacetimePoint) -> BodyId {
        let name = format!("p{}", self.bodies.len());
        self.push(name, BodyKind::Photon { point, direction })
    }

    /// Register a uniformly accelerated body on the world-frame hyperbola
    /// with the given center and acceleration parameter `a > 0`.
    pub fn add_accelerated(&mut self, center: SpacetimePoint, accel: FieldElement, axis: usize) -> Result<BodyId> {
        self.check_point(&center)?;
        if accel.signum() != Ordering::Greater {
            return Err(Error::NonpositiveAcceleration(accel.to_string()));
        }
        if axis == 0 || axis >= self.dim {
            return Err(Error::ParameterOutOfRange(format!("spatial axis {axis}")));
        }
        let name = format!("a{}", self.bodies.len());
        Ok(self.push(name, BodyKind::Accelerated { center, accel, axis }))
    }

    fn map_of(&self, m: BodyId) -> Result<&PoincareMap> {
        match &self.body(m).kind {
            BodyKind::Inertial(t) => Ok(t),
            _ => Err(Error::NotInertial(self.body(m).name.clone())),
        }
    }

    /// Whether the world-frame point `w` lies on `b`'s worldline.
    pub fn on_worldline(&self, b: BodyId, w: &SpacetimePoint) -> bool {
        match &self.body(b).kind {
            BodyKind::Inertial(_) => {
                let inv = self.inverses[b.0].as_ref().expect("inertial bodies have inverses");
                let local = inv.apply(w).expect("dimension checked");
                local.space_component().iter().all(FieldElement::is_zero)
            }
            BodyKind::Photon { point, direction } => on_line(point, direction, w),
            BodyKind::Accelerated { center, accel, axis } => on_hyperbola(center, accel, *axis, w),
        }
    }

    /// `W(m, b, x̄)` for an inertial observer `m`.
    pub fn worldview_eval(&self, m: BodyId, b: BodyId, x: &SpacetimePoint) -> Result<bool> {
        self.check_point(x)?;
        let w = self.map_of(m)?.apply(x)?;
        Ok(self.on_worldline(b, &w))
    }

    /// `ev_m(x̄)` restricted to registered bodies.
    pub fn event_at(&self, m: BodyId, x: &SpacetimePoint) -> Result<Event> {
        self.check_point(x)?;
        let w = self.map_of(m)?.apply(x)?;
        Ok(self.event_at_world(&w))
    }

    pub fn event_at_world(&self, w: &SpacetimePoint) -> Event {
        Event { bodies: self.bodies.iter().filter(|b| self.on_worldline(b.id, w)).map(|b| b.id).collect() }
    }

    /// `T_k⁻¹ ∘ T_m`, taking `m`'s coordinates to `k`'s.
    pub fn worldview_transform(&self, m: BodyId, k: BodyId) -> Result<PoincareMap> {
        let tm = self.map_of(m)?;
        self.map_of(k)?;
        self.inverses[k.0].as_ref().expect("inertial bodies have inverses").compose(tm)
    }

    /// Whether some photon passes through both of `m`'s coordinate points.
    pub fn photon_connects(&self, m: BodyId, x: &SpacetimePoint, y: &SpacetimePoint) -> Result<bool> {
        let t = self.map_of(m)?;
        let (wx, wy) = (t.apply(x)?, t.apply(y)?);
        Ok(match self.policy {
            PhotonPolicy::Synthetic => minkowski::minkowski_sq(&wx.sub(&wy)?).is_zero(),
            PhotonPolicy::Explicit => self
                .bodies
                .iter()
                .filter(|b| b.is_photon())
                .any(|b| self.on_worldline(b.id, &wx) && self.on_worldline(b.id, &wy)),
        })
    }

    /// A world-frame point on `b`'s worldline for the rational parameter `s`.
    fn point_on(&self, b: BodyId, s: &Rational) -> SpacetimePoint {
        let ctx = self.ctx;
        match &self.body(b).kind {
            BodyKind::Inertial(t) => {
                let mut c = vec![ctx.zero(); self.dim];
                c[0] = ctx.from_rational(s.clone());
                t.apply(&SpacetimePoint::new(c).unwrap()).unwrap()
            }
            BodyKind::Photon { point, direction } => {
                point.add(&direction.scale(&ctx.from_rational(s.clone())).unwrap()).unwrap()
            }
            BodyKind::Accelerated { center, accel, axis } => {
                // rational parametrization of the right branch, σ = e^τ > 0
                let sigma = ctx.from_rational(rational::int(1) + s * s);
                let inv = sigma.inv().unwrap();
                let two = ctx.from_int(2);
                let mut c = center.coords().to_vec();
                c[0] = &c[0] + &(&(accel * &(&sigma - &inv)) / &two);
                c[*axis] = &c[*axis] + &(&(accel * &(&sigma + &inv)) / &two);
                SpacetimePoint::new(c).unwrap()
            }
        }
    }
}

fn on_line(point: &SpacetimePoint, direction: &SpacetimePoint, w: &SpacetimePoint) -> bool {
    let delta = w.sub(point).expect("dimension checked");
    let v0 = direction.time();
    if v0.is_zero() {
        return false;
    }
    let lambda = &delta.coords()[0] / v0;
    delta.coords().iter().zip(direction.coords()).all(|(d, v)| *d == &lambda * v)
}

fn on_hyperbola(center: &SpacetimePoint, accel: &FieldElement, axis: usize, w: &SpacetimePoint) -> bool {
    let d = w.sub(center).expect("dimension checked");
    let c = d.coords();
    let others_zero = c.iter().enumerate().skip(1).all(|(i, v)| i == axis || v.is_zero());
    others_zero && c[axis].signum() == Ordering::Greater && &c[axis].square() - &c[0].square() == accel.square()
}

/// Axioms checked by [`check_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    AxPh,
    AxEv,
    AxSelf,
    AxSymD,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::AxPh, Axiom::AxEv, Axiom::AxSelf, Axiom::AxSymD];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::AxPh => "AxPh",
            Axiom::AxEv => "AxEv",
            Axiom::AxSelf => "AxSelf",
            Axiom::AxSymD => "AxSymD",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomSampling {
    pub seed: u64,
    /// Sampled points or pairs per axiom.
    pub samples: usize,
}

impl Default for AxiomSampling {
    fn default() -> Self {
        AxiomSampling { seed: 0, samples: 500 }
    }
}

fn random_point(model: &WorldviewModel, rng: &mut ChaCha8Rng) -> SpacetimePoint {
    let qs: Vec<Rational> = (0..model.dim).map(|_| sample::random_rational(rng)).collect();
    SpacetimePoint::from_rationals(model.ctx, &qs).unwrap()
}

/// A rational unit vector in `Q^n` by inverse stereographic projection.
fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    if n == 1 {
        return vec![rational::int(if rng.gen_bool(0.5) { 1 } else { -1 })];
    }
    let w: Vec<Rational> = (0..n - 1).map(|_| rational::ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect();
    let norm: Rational = w.iter().map(|x| x * x).sum();
    let den = &norm + rational::int(1);
    let mut out: Vec<Rational> = w.iter().map(|x| rational::int(2) * x / &den).collect();
    out.push((&norm - rational::int(1)) / &den);
    out
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = sample::random_rational(rng);
        if q != rational::int(0) {
            return q;
        }
    }
}

/// Displacement with time component `dt` and spatial part `speed · dt · n̂`.
fn displacement(model: &WorldviewModel, dt: &Rational, speed: &Rational, rng: &mut ChaCha8Rng) -> SpacetimePoint {
    let n = random_unit_vector(model.dim - 1, rng);
    let mut c = vec![dt.clone()];
    c.extend(n.iter().map(|x| x * dt * speed));
    SpacetimePoint::from_rationals(model.ctx, &c).unwrap()
}

fn sq_space(v: &SpacetimePoint) -> FieldElement {
    minkowski::space_sq(v)
}

fn check_ph(model: &WorldviewModel, cfg: &AxiomSampling) -> Verdict {
    let mut rng = sample::rng(cfg.seed ^ 0x5048);
    let observers = model.inertial_observers();
    let mut law = LawCheck::new(Axiom::AxPh.name());
    let mut c_sq_seen: BTreeSet<String> = BTreeSet::new();
    for m in &observers {
        // photon pairs of registered photons, expressed in m's coordinates
        let tinv = model.inverses[m.0].clone().expect("inertial");
        let mut pairs: Vec<(SpacetimePoint, SpacetimePoint)> = model
            .bodies
            .iter()
            .filter(|b| b.is_photon())
            .map(|b| {
                let p = model.point_on(b.id, &rational::int(0));
                let q = model.point_on(b.id, &rational::int(1));
                (tinv.apply(&p).unwrap(), tinv.apply(&q).unwrap())
            })
            .collect();
        pairs.push((model.origin(), model.origin()));
        let per_observer = cfg.samples.div_ceil(observers.len().max(1));
        for i in 0..per_observer {
            let x = random_point(model, &mut rng);
            let dt = nonzero_rational(&mut rng);
            let y = match i % 4 {
                // lightlike, timelike, speed-2 and generic displacements
                0 | 1 => x.add(&displacement(model, &dt, &rational::int(1), &mut rng)).unwrap(),
                2 => x.add(&displacement(model, &dt, &rational::ratio(1, 2), &mut rng)).unwrap(),
                _ if i % 8 == 3 => x.add(&displacement(model, &dt, &rational::int(2), &mut rng)).unwrap(),
                _ => random_point(model, &mut rng),
            };
            pairs.push((x, y));
        }
        // measure c_m² from the first connected pair with distinct times
        let connected: Vec<bool> =
            pairs.iter().map(|(x, y)| model.photon_connects(*m, x, y).unwrap_or(false)).collect();
        let c_sq = pairs.iter().zip(&connected).find_map(|((x, y), &c)| {
            let d = y.sub(x).unwrap();
            (c && !d.time().is_zero()).then(|| &sq_space(&d) / &d.time().square())
        });
        let Some(c_sq) = c_sq else {
            law.record(false, || vec![format!("observer {}", model.body(*m).name), "no photon found".into()]);
            continue;
        };
        c_sq_seen.insert(c_sq.to_string());
        law.record(c_sq.signum() == Ordering::Greater, || vec![format!("c_m^2 = {c_sq}")]);
        for ((x, y), c) in pairs.iter().zip(connected) {
            let d = y.sub(x).unwrap();
            let equation = sq_space(&d) == &c_sq * &d.time().square();
            law.record(c == equation, || {
                vec![
                    format!("observer {}", model.body(*m).name),
                    format!("x = {x}"),
                    format!("y = {y}"),
                    format!("photon = {c}"),
                    format!("c_m^2 = {c_sq}"),
                ]
            });
        }
    }
    let note = format!("measured c_m^2: {}", c_sq_seen.into_iter().collect::<Vec<_>>().join(", "));
    law.finish().with_note(note)
}

impl WorldviewModel {
    fn origin(&self) -> SpacetimePoint {
        SpacetimePoint::origin(self.ctx, self.dim)
    }

    /// A sample point for `m`: on some registered worldline half the time.
    fn interesting_point(&self, m: BodyId, rng: &mut ChaCha8Rng) -> SpacetimePoint {
        if rng.gen_bool(0.5) && !self.bodies.is_empty() {
            let b = BodyId(rng.gen_range(0..self.bodies.len()));
            let w = self.point_on(b, &sample::random_rational(rng));
            self.inverses[m.0].as_ref().expect("inertial").apply(&w).unwrap()
        } else {
            random_point(self, rng)
        }
    }

    fn observer_pairs(&self) -> Vec<(BodyId, BodyId)> {
        let obs = self.inertial_observers();
        obs.iter().flat_map(|&m| obs.iter().map(move |&k| (m, k))).collect()
    }
}

fn check_ev(model: &WorldviewModel, cfg: &AxiomSampling) -> Verdict {
    let mut rng = sample::rng(cfg.seed ^ 0x4576);
    let pairs = model.observer_pairs();
    let mut law = LawCheck::new(Axiom::AxEv.name());
    for i in 0..cfg.samples {
        let (m, k) = pairs[i % pairs.len()];
        let x = model.interesting_point(m, &mut rng);
        let f = model.worldview_transform(m, k).unwrap();
        let y = f.apply(&x).unwrap();
        let (em, ek) = (model.event_at(m, &x).unwrap(), model.event_at(k, &y).unwrap());
        // synthetic photons agree iff the world points coincide
        let same_world = model.map_of(m).unwrap().apply(&x).unwrap() == model.map_of(k).unwrap().apply(&y).unwrap();
        law.record(em == ek && same_world, || {
            vec![
                format!("m = {}", model.body(m).name),
                format!("k = {}", model.body(k).name),
                format!("x = {x}"),
                format!("y = {y}"),
                format!("ev_m = {em}"),
                format!("ev_k = {ek}"),
            ]
        });
    }
    law.finish()
}

fn check_self(model: &WorldviewModel, cfg: &AxiomSampling) -> Verdict {
    let mut rng = sample::rng(cfg.seed ^ 0x5365);
    let obs = model.inertial_observers();
    let mut law = LawCheck::new(Axiom::AxSelf.name());
    for i in 0..cfg.samples {
        let m = obs[i % obs.len()];
        let mut x = random_point(model, &mut rng);
        if i % 2 == 0 {
            // on the time axis
            let t = x.time().clone();
            x = SpacetimePoint::new(
                (0..model.dim).map(|j| if j == 0 { t.clone() } else { model.ctx.zero() }).collect(),
            )
            .unwrap();
        }
        let on_axis = x.space_component().iter().all(FieldElement::is_zero);
        let seen = model.worldview_eval(m, m, &x).unwrap();
        law.record(seen == on_axis, || {
            vec![format!("m = {}", model.body(m).name), format!("x = {x}"), format!("W(m,m,x) = {seen}")]
        });
    }
    law.finish()
}

/// A nonzero `Δ` with `Δ₁ = 0` and `(LΔ)₁ = 0`, when one exists.
fn doubly_simultaneous(model: &WorldviewModel, f: &PoincareMap, rng: &mut ChaCha8Rng) -> Option<SpacetimePoint> {
    let ctx = model.ctx;
    let row = &f.linear()[0];
    let mut delta: Vec<FieldElement> = vec![ctx.zero()];
    delta.extend((1..model.dim).map(|_| ctx.from_rational(sample::random_rational(rng))));
    if let Some(p) = (1..model.dim).find(|&j| !row[j].is_zero()) {
        let rest = (1..model.dim).filter(|&j| j != p).fold(ctx.zero(), |acc, j| &acc + &(&row[j] * &delta[j]));
        delta[p] = &(-&rest) / &row[p];
    }
    let d = SpacetimePoint::new(delta).ok()?;
    (!d.space_component().iter().all(FieldElement::is_zero)).then_some(d)
}

fn check_symd(model: &WorldviewModel, cfg: &AxiomSampling) -> Verdict {
    let mut rng = sample::rng(cfg.seed ^ 0x5379);
    let pairs = model.observer_pairs();
    let mut law = LawCheck::new(Axiom::AxSymD.name());
    for i in 0..cfg.samples {
        let (m, k) = pairs[i % pairs.len()];
        let f = model.worldview_transform(m, k).unwrap();
        let x = random_point(model, &mut rng);
        let Some(delta) = doubly_simultaneous(model, &f, &mut rng) else { continue };
        let y = x.add(&delta).unwrap();
        let (x2, y2) = (f.apply(&x).unwrap(), f.apply(&y).unwrap());
        let d2 = y2.sub(&x2).unwrap();
        let ok = d2.time().is_zero() && sq_space(&delta) == sq_space(&d2);
        law.record(ok, || {
            vec![
                format!("m = {}", model.body(m).name),
                format!("k = {}", model.body(k).name),
                format!("x = {x}"),
                format!("y = {y}"),
                format!("x' = {x2}"),
                format!("y' = {y2}"),
            ]
        });
    }
    // unit speed of light: a photon through the origin and (1, 1, 0, …, 0)
    let mut unit = vec![model.ctx.one(), model.ctx.one()];
    unit.extend((2..model.dim).map(|_| model.ctx.zero()));
    let unit = SpacetimePoint::new(unit).unwrap();
    for m in model.inertial_observers() {
        let ok = model.photon_connects(m, &model.origin(), &unit).unwrap_or(false);
        law.record(ok, || vec![format!("m = {}", model.body(m).name), format!("no photon through origin and {unit}")]);
    }
    law.finish()
}

/// Exact `Lᵀ η L = η` for every worldview transformation between inertial
/// observers.
pub fn check_transformations(model: &WorldviewModel) -> Verdict {
    let mut law = LawCheck::new("worldview-transformations-poincare");
    for (m, k) in model.observer_pairs() {
        let f = model.worldview_transform(m, k);
        let ok = f.as_ref().is_ok_and(|f| minkowski::preserves_minkowski_form(f.linear()));
        law.record(ok, || vec![format!("m = {}", model.body(m).name), format!("k = {}", model.body(k).name)]);
    }
    law.finish()
}

/// Check the chosen axioms on sampled points and pairs, in axiom order, plus
/// the Poincaré property of every worldview transformation.
pub fn check_axioms(model: &WorldviewModel, which: &[Axiom], cfg: &AxiomSampling) -> AxiomReport {
    let mut which = which.to_vec();
    which.sort();
    which.dedup();
    let verdicts: Vec<Verdict> = which
        .par_iter()
        .map(|ax| match ax {
            Axiom::AxPh => check_ph(model, cfg),
            Axiom::AxEv => check_ev(model, cfg),
            Axiom::AxSelf => check_self(model, cfg),
            Axiom::AxSymD => check_symd(model, cfg),
        })
        .collect();
    let mut report = AxiomReport::new(format!("specrel/{}/dim-{}", model.ctx.name(), model.dim));
    for v in verdicts {
        report.push(v);
    }
    report.push(check_transformations(model));
    report
}

/// Observer entry of a model description. Matrix and vector entries are
/// exact expressions evaluated in the model's context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObserverSpec {
    Boost {
        #[serde(default)]
        name: Option<String>,
        /// Rational boost parameter `u`.
        boost: String,
        #[serde(default = "default_axis")]
        axis: usize,
        #[serde(default)]
        translation: Option<Vec<String>>,
    },
    Velocity {
        #[serde(default)]
        name: Option<String>,
        /// Velocity expression, e.g. `"1/sqrt(2)"`.
        velocity: String,
        #[serde(default = "default_axis")]
        axis: usize,
        #[serde(default)]
        translation: Option<Vec<String>>,
    },
    Map {
        #[serde(default)]
        name: Option<String>,
        linear: Vec<Vec<String>>,
        #[serde(default)]
        translation: Option<Vec<String>>,
    },
}

fn default_axis() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonSpec {
    pub point: Vec<String>,
    pub direction: Vec<String>,
}

/// JSON model description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub context: String,
    #[serde(default = "default_dim")]
    pub dim: usize,
    #[serde(default)]
    pub photon_policy: PhotonPolicy,
    pub observers: Vec<ObserverSpec>,
    #[serde(default)]
    pub photons: Vec<PhotonSpec>,
}

fn default_dim() -> usize {
    minkowski::DEFAULT_DIM
}

impl ModelSpec {
    /// Identity observer plus rational boosts with parameters 1/3, 1/2, 2/5
    /// along the first spatial axis.
    pub fn standard(context: FieldContext, dim: usize) -> Self {
        let mut observers = vec![ObserverSpec::Boost { name: None, boost: "0".into(), axis: 1, translation: None }];
        for u in ["1/3", "1/2", "2/5"] {
            observers.push(ObserverSpec::Boost { name: None, boost: u.into(), axis: 1, translation: None });
        }
        ModelSpec {
            context: context.name().into(),
            dim,
            photon_policy: PhotonPolicy::Synthetic,
            observers,
            photons: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn build(&self) -> Result<WorldviewModel> {
        let ctx = FieldContext::parse(&self.context)?;
        let d = self.dim;
        let value = |s: &str| expr::eval_str(s, ctx);
        let point = |v: &[String]| -> Result<SpacetimePoint> {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            SpacetimePoint::new(v.iter().map(|s| value(s)).collect::<Result<_>>()?)
        };
        let with_translation = |map: PoincareMap, t: &Option<Vec<String>>| -> Result<PoincareMap> {
            match t {
                Some(t) => PoincareMap::translation_by(point(t)?).compose(&map),
                None => Ok(map),
            }
        };
        let mut maps = Vec::new();
        let mut names = Vec::new();
        for (i, o) in self.observers.iter().enumerate() {
            let (name, map) = match o {
                ObserverSpec::Boost { name, boost, axis, translation } => {
                    let u = value(boost)?;
                    let u = u.as_rational().cloned().ok_or_else(|| {
                        Error::InvalidModel(format!("boost parameter `{boost}` must be rational"))
                    })?;
                    (name, with_translation(minkowski::rational_boost(ctx, d, &u, *axis)?, translation)?)
                }
                ObserverSpec::Velocity { name, velocity, axis, translation } => {
                    let v = value(velocity)?;
                    (name, with_translation(minkowski::boost_from_velocity(&v, d, *axis)?, translation)?)
                }
                ObserverSpec::Map { name, linear, translation } => {
                    let rows = linear
                        .iter()
                        .map(|r| r.iter().map(|s| value(s)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    let t = match translation {
                        Some(t) => point(t)?,
                        None => SpacetimePoint::origin(ctx, d),
                    };
                    (name, PoincareMap::new(rows, t)?)
                }
            };
            names.push(name.clone().unwrap_or_else(|| format!("m{i}")));
            maps.push(map);
        }
        let mut model = build_model(ctx, d, maps, self.photon_policy)?;
        for (body, name) in model.bodies.iter_mut().zip(names) {
            body.name = name;
        }
        for p in &self.photons {
            model.add_photon(point(&p.point)?, point(&p.direction)?)?;
        }
        Ok(model)
    }
}
