//! Bouquets of components glued along closed subsets.
//!
//! A [`GluingPattern`] holds named [`Component`]s and, for ordered pairs
//! `(X, Y)`, an overlap `F_YX ⊂ X` together with a map `h_YX : F_YX → Y`.
//! Closed subsets are membership predicates and are only ever evaluated on
//! registered sample points.  A [`Bouquet`] is the quotient of the
//! registered points by the equivalence relation generated by the maps.

mod slice;
mod union_find;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::{BigInt, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::SubalgebraFamily;
use crate::grassmann::{LimitPoint, SubspacePoint};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

pub use slice::{assemble_sl3_slice, line_signature, semisimple_directions};
use union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    NilpotentOrbitClosure,
    SemisimpleOrbitClosure,
    ExplicitSubvariety,
}

impl ComponentKind {
    pub fn label(self) -> &'static str {
        match self {
            ComponentKind::NilpotentOrbitClosure => "nilpotent-orbit-closure",
            ComponentKind::SemisimpleOrbitClosure => "semisimple-orbit-closure",
            ComponentKind::ExplicitSubvariety => "explicit-subvariety",
        }
    }
}

/// Membership predicate of a component, evaluated on points of the ambient
/// Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// Lines `[y]` with `y` nilpotent and `y^order = 0`.
    Nilpotent { order: usize },
    /// Closure of the conjugation orbit of the line through
    /// `diag(eigenvalues)`: lines `[y]` with `y` conjugate to a multiple
    /// `λ·diag(eigenvalues)`, and at `λ = 0` nilpotent lines with
    /// `y^r = 0`, `r` the number of distinct eigenvalues.
    SemisimpleClosure { eigenvalues: Vec<Rational> },
    /// An explicit finite set of points.
    Points(BTreeSet<SubspacePoint>),
}

impl Locus {
    pub fn contains(&self, ambient: &LieAlgebra, p: &SubspacePoint) -> bool {
        if let Locus::Points(set) = self {
            return set.contains(p);
        }
        if p.k() != 1 || p.ambient_dim() != ambient.dim() || !ambient.has_realization() {
            return false;
        }
        let y = ambient.realize(&p.rows()[0]);
        match self {
            Locus::Nilpotent { order } => y.is_nilpotent() && y.pow(*order).is_zero(),
            Locus::SemisimpleClosure { eigenvalues } => in_semisimple_closure(&y, eigenvalues),
            Locus::Points(_) => unreachable!(),
        }
    }
}

fn distinct(values: &[Rational]) -> Vec<Rational> {
    let set: BTreeSet<Rational> = values.iter().cloned().collect();
    set.into_iter().collect()
}

fn in_semisimple_closure(y: &Matrix, eigenvalues: &[Rational]) -> bool {
    let n = eigenvalues.len();
    if y.rows() != n || eigenvalues.iter().all(|e| e.is_zero()) {
        return false;
    }
    let roots = distinct(eigenvalues);
    if y.is_nilpotent() {
        return y.pow(roots.len()).is_zero();
    }
    let x0 = Matrix::diagonal(eigenvalues);
    let (cy, cx) = (y.char_poly(), x0.char_poly());
    // c_k(y) = λ^k c_k(x0) for the coefficient of t^(n-k)
    let mut ratios = Vec::new();
    for k in 1..=n {
        let (a, b) = (cy.coeff(n - k), cx.coeff(n - k));
        if b.is_zero() {
            if !a.is_zero() {
                return false;
            }
        } else {
            ratios.push((k, a / b));
        }
    }
    for (j, rj) in &ratios {
        for (k, rk) in &ratios {
            if rational::pow(rj, *k as i64) != rational::pow(rk, *j as i64) {
                return false;
            }
        }
    }
    if ratios.iter().all(|(_, r)| r.is_zero()) {
        return false;
    }
    if roots.len() == n {
        return true;
    }
    // repeated eigenvalues: the multiple is rational and the minimal
    // polynomial must split with the scaled roots
    let Some((k, r)) = ratios.iter().find(|(_, r)| !r.is_zero()) else { return false };
    rational_roots_of_power(r, *k).into_iter().any(|lambda| {
        let mut acc = Matrix::identity(n);
        for e in &roots {
            acc = acc.mul(&y.sub(&Matrix::identity(n).scale(&(&lambda * e))));
        }
        acc.is_zero() && y.char_poly() == x0.scale(&lambda).char_poly()
    })
}

/// Rational `λ` with `λ^k = r`.
fn rational_roots_of_power(r: &Rational, k: usize) -> Vec<Rational> {
    let exact = |n: &BigInt| -> Option<BigInt> {
        let root = n.abs().nth_root(k as u32);
        (num::pow(root.clone(), k) == n.abs()).then_some(root)
    };
    let (Some(num), Some(den)) = (exact(r.numer()), exact(r.denom())) else { return Vec::new() };
    let base = Rational::new(num, den);
    match (k.is_multiple_of(2), r.is_negative()) {
        (true, true) => Vec::new(),
        (true, false) => vec![base.clone(), -base],
        (false, true) => vec![-base],
        (false, false) => vec![base],
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    pub representative: SubspacePoint,
    pub signature: String,
    pub dim: usize,
    pub locus: Locus,
    /// Registered sample points, the representative first.
    pub samples: Vec<SubspacePoint>,
}

impl Component {
    pub fn new(
        id: impl Into<String>,
        kind: ComponentKind,
        representative: SubspacePoint,
        signature: impl Into<String>,
        dim: usize,
        locus: Locus,
    ) -> Self {
        Component {
            id: id.into(),
            kind,
            samples: vec![representative.clone()],
            representative,
            signature: signature.into(),
            dim,
            locus,
        }
    }

    /// A component consisting of finitely many points.
    pub fn explicit(id: impl Into<String>, points: Vec<SubspacePoint>) -> Result<Self> {
        let representative =
            points.iter().min().cloned().ok_or_else(|| Error::input("explicit component without points"))?;
        let mut c = Component::new(
            id,
            ComponentKind::ExplicitSubvariety,
            representative,
            format!("{} points", points.len()),
            0,
            Locus::Points(points.iter().cloned().collect()),
        );
        c.samples = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(c)
    }

    pub fn add_sample(&mut self, p: SubspacePoint) {
        if !self.samples.contains(&p) {
            self.samples.push(p);
        }
    }
}

/// The closed subset `F_YX ⊂ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedSubset {
    /// All of `X`.
    Whole,
    /// `X ∩ Y` as loci in the common ambient.
    Meet,
    Points(BTreeSet<SubspacePoint>),
}

impl ClosedSubset {
    pub fn label(&self) -> String {
        match self {
            ClosedSubset::Whole => "whole".into(),
            ClosedSubset::Meet => "meet".into(),
            ClosedSubset::Points(s) => format!("{} points", s.len()),
        }
    }
}

/// The identification map `h_YX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointMap {
    Identity,
    /// Listed points go to their images; all others are fixed.
    Table(BTreeMap<SubspacePoint, SubspacePoint>),
}

impl PointMap {
    pub fn apply(&self, p: &SubspacePoint) -> SubspacePoint {
        match self {
            PointMap::Identity => p.clone(),
            PointMap::Table(t) => t.get(p).cloned().unwrap_or_else(|| p.clone()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            PointMap::Identity => "identity".into(),
            PointMap::Table(t) => format!("table of {}", t.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub subset: ClosedSubset,
    pub map: PointMap,
}

#[derive(Debug)]
pub struct GluingPattern {
    ambient: Arc<LieAlgebra>,
    components: BTreeMap<String, Component>,
    /// Keyed by `(X, Y)`: the subset `F_YX ⊂ X` and `h_YX`.
    overlaps: BTreeMap<(String, String), Overlap>,
    /// Memoized locus membership; ids are never reused.
    membership: Mutex<HashMap<(String, SubspacePoint), bool>>,
}

impl Clone for GluingPattern {
    fn clone(&self) -> Self {
        GluingPattern {
            ambient: self.ambient.clone(),
            components: self.components.clone(),
            overlaps: self.overlaps.clone(),
            membership: Mutex::new(self.membership.lock().expect("membership cache poisoned").clone()),
        }
    }
}

impl GluingPattern {
    pub fn new(ambient: Arc<LieAlgebra>) -> Self {
        GluingPattern {
            ambient,
            components: BTreeMap::new(),
            overlaps: BTreeMap::new(),
            membership: Mutex::new(HashMap::new()),
        }
    }

    pub fn ambient(&self) -> &Arc<LieAlgebra> {
        &self.ambient
    }

    /// Adds `X` with `F_XX = X` and `h_XX` the identity.
    pub fn add_component(&mut self, c: Component) -> Result<()> {
        if self.components.contains_key(&c.id) {
            return Err(Error::input(format!("duplicate component {:?}", c.id)));
        }
        for p in &c.samples {
            if p.ambient_dim() != self.ambient.dim() {
                return Err(Error::DimensionMismatch { expected: self.ambient.dim(), got: p.ambient_dim() });
            }
            if !c.locus.contains(&self.ambient, p) {
                return Err(Error::Membership(format!("sample {} is not in component {}", describe(p), c.id)));
            }
        }
        let id = c.id.clone();
        self.components.insert(id.clone(), c);
        self.overlaps.insert((id.clone(), id), Overlap { subset: ClosedSubset::Whole, map: PointMap::Identity });
        Ok(())
    }

    /// Sets `F_YX` and `h_YX` for `x = X`, `y = Y`.
    pub fn set_overlap(&mut self, x: &str, y: &str, subset: ClosedSubset, map: PointMap) -> Result<()> {
        for id in [x, y] {
            if !self.components.contains_key(id) {
                return Err(Error::input(format!("unknown component {id:?}")));
            }
        }
        self.overlaps.insert((x.to_string(), y.to_string()), Overlap { subset, map });
        Ok(())
    }

    /// Glues `X` and `Y` identically along `X ∩ Y`, in both directions.
    pub fn glue_along_meet(&mut self, x: &str, y: &str) -> Result<()> {
        self.set_overlap(x, y, ClosedSubset::Meet, PointMap::Identity)?;
        self.set_overlap(y, x, ClosedSubset::Meet, PointMap::Identity)
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.get(id)
    }

    pub fn overlap(&self, x: &str, y: &str) -> Option<&Overlap> {
        self.overlaps.get(&(x.to_string(), y.to_string()))
    }

    pub fn overlaps(&self) -> impl Iterator<Item = (&(String, String), &Overlap)> {
        self.overlaps.iter()
    }

    pub fn in_component(&self, id: &str, p: &SubspacePoint) -> bool {
        let Some(c) = self.components.get(id) else { return false };
        let key = (id.to_string(), p.clone());
        if let Some(&known) = self.membership.lock().expect("membership cache poisoned").get(&key) {
            return known;
        }
        let inside = c.locus.contains(&self.ambient, p);
        self.membership.lock().expect("membership cache poisoned").insert(key, inside);
        inside
    }

    /// Whether `p ∈ F_YX`.
    pub fn in_overlap(&self, x: &str, y: &str, p: &SubspacePoint) -> bool {
        let Some(o) = self.overlap(x, y) else { return false };
        match &o.subset {
            ClosedSubset::Whole => self.in_component(x, p),
            ClosedSubset::Meet => self.in_component(x, p) && self.in_component(y, p),
            ClosedSubset::Points(s) => s.contains(p),
        }
    }

    /// `h_YX(p)` when `p ∈ F_YX`.
    pub fn transfer(&self, x: &str, y: &str, p: &SubspacePoint) -> Option<SubspacePoint> {
        if !self.in_overlap(x, y, p) {
            return None;
        }
        self.overlap(x, y).map(|o| o.map.apply(p))
    }

    /// Ids of the components whose locus contains `p`.
    pub fn locate(&self, p: &SubspacePoint) -> Vec<String> {
        self.components.keys().filter(|id| self.in_component(id, p)).cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `F_XX = X` and `h_XX` is the identity.
    Identity,
    /// `h_ZY ∘ h_YX = h_ZX` wherever defined.
    Cocycle,
    /// `h_XY ∘ h_YX` is the identity on `F_YX`.
    Symmetry,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Identity => "identity",
            Axiom::Cocycle => "cocycle",
            Axiom::Symmetry => "symmetry",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub components: Vec<String>,
    pub points_checked: usize,
    pub failure: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub samples_per_overlap: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match &c.failure {
                None => "ok".to_string(),
                Some(msg) => format!("FAILED: {msg}"),
            };
            writeln!(f, "{} ({}) on {} points: {status}", c.axiom.label(), c.components.join(", "), c.points_checked)?;
        }
        Ok(())
    }
}

/// Compact rendering of a point for reports.
pub fn describe(p: &SubspacePoint) -> String {
    let rows: Vec<String> = p.rows().iter().map(|r| format!("[{}]", rational::format_vec(r).join(", "))).collect();
    format!("<{}>", rows.join("; "))
}

/// Checks the gluing axioms on up to `samples` registered points per
/// instance, drawn with a generator seeded by `seed` and the instance index.
pub fn validate_pattern(p: &GluingPattern, samples: usize, seed: u64) -> ValidationReport {
    let ids: Vec<&String> = p.components.keys().collect();
    let mut checks = Vec::new();
    let mut stream = 0u64;
    let mut pick = |pool: Vec<&SubspacePoint>| -> Vec<SubspacePoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        stream += 1;
        let mut chosen: Vec<SubspacePoint> = pool.choose_multiple(&mut rng, samples).map(|q| (*q).clone()).collect();
        chosen.sort();
        chosen
    };

    for x in &ids {
        let comp = &p.components[*x];
        let chosen = pick(comp.samples.iter().collect());
        let failure = chosen.iter().find_map(|q| {
            if !p.in_overlap(x, x, q) {
                Some(format!("{} lies in {x} but not in F_({x},{x})", describe(q)))
            } else {
                let image = p.transfer(x, x, q)?;
                (image != *q).then(|| format!("h_({x},{x}) moves {} to {}", describe(q), describe(&image)))
            }
        });
        let failure = failure.or_else(|| match p.overlap(x, x) {
            None => Some(format!("no self-overlap recorded for {x}")),
            Some(o) if o.subset != ClosedSubset::Whole && o.subset != ClosedSubset::Meet => {
                Some(format!("F_({x},{x}) is not all of {x}"))
            }
            _ => None,
        });
        checks.push(AxiomCheck {
            axiom: Axiom::Identity,
            components: vec![(*x).clone()],
            points_checked: chosen.len(),
            failure,
        });
    }

    for x in &ids {
        for y in &ids {
            if x == y || p.overlap(x, y).is_none() {
                continue;
            }
            let pool: Vec<&SubspacePoint> = p.components[*x].samples.iter().filter(|q| p.in_overlap(x, y, q)).collect();
            if pool.is_empty() {
                continue;
            }
            let chosen = pick(pool);
            let failure = chosen.iter().find_map(|q| {
                let image = p.transfer(x, y, q)?;
                match p.transfer(y, x, &image) {
                    None => {
                        Some(format!("h_({x},{y}) sends {} to {} outside F_({y},{x})", describe(q), describe(&image)))
                    }
                    Some(back) if back != *q => {
                        Some(format!("h_({y},{x}) ∘ h_({x},{y}) sends {} to {}", describe(q), describe(&back)))
                    }
                    Some(_) => None,
                }
            });
            checks.push(AxiomCheck {
                axiom: Axiom::Symmetry,
                components: vec![(*x).clone(), (*y).clone()],
                points_checked: chosen.len(),
                failure,
            });
        }
    }

    for x in &ids {
        for y in &ids {
            for z in &ids {
                if x == y || y == z || x == z {
                    continue;
                }
                if p.overlap(x, y).is_none() || p.overlap(y, z).is_none() || p.overlap(x, z).is_none() {
                    continue;
                }
                let pool: Vec<&SubspacePoint> = p.components[*x]
                    .samples
                    .iter()
                    .filter(|q| {
                        p.in_overlap(x, z, q) && p.transfer(x, y, q).is_some_and(|image| p.in_overlap(y, z, &image))
                    })
                    .collect();
                if pool.is_empty() {
                    continue;
                }
                let chosen = pick(pool);
                let failure = chosen.iter().find_map(|q| {
                    let via = p.transfer(y, z, &p.transfer(x, y, q)?)?;
                    let direct = p.transfer(x, z, q)?;
                    (via != direct).then(|| {
                        format!(
                            "at {} in {x}: through {y} gives {}, directly {}",
                            describe(q),
                            describe(&via),
                            describe(&direct)
                        )
                    })
                });
                checks.push(AxiomCheck {
                    axiom: Axiom::Cocycle,
                    components: vec![(*x).clone(), (*y).clone(), (*z).clone()],
                    points_checked: chosen.len(),
                    failure,
                });
            }
        }
    }
    ValidationReport { samples_per_overlap: samples, seed, checks }
}

/// A gluing pattern with the equivalence classes of its registered points.
#[derive(Clone, Debug)]
pub struct Bouquet {
    pattern: GluingPattern,
    nodes: Vec<(String, SubspacePoint)>,
    index: HashMap<(String, SubspacePoint), usize>,
    classes: UnionFind,
}

impl Bouquet {
    /// Registers every sample point of every component.
    pub fn new(pattern: GluingPattern) -> Result<Self> {
        let mut b = Bouquet { pattern, nodes: Vec::new(), index: HashMap::new(), classes: UnionFind::default() };
        let seeds: Vec<(String, SubspacePoint)> =
            b.pattern.components().flat_map(|c| c.samples.iter().map(move |p| (c.id.clone(), p.clone()))).collect();
        for (id, p) in seeds {
            b.register(&id, p)?;
        }
        Ok(b)
    }

    pub fn empty(ambient: Arc<LieAlgebra>) -> Self {
        Bouquet::new(GluingPattern::new(ambient)).expect("an empty pattern registers nothing")
    }

    pub fn pattern(&self) -> &GluingPattern {
        &self.pattern
    }

    pub fn components(&self) -> Vec<&Component> {
        self.pattern.components().collect()
    }

    /// Registered points in registration order.
    pub fn registered(&self) -> &[(String, SubspacePoint)] {
        &self.nodes
    }

    fn check_member(&self, id: &str, p: &SubspacePoint) -> Result<()> {
        if self.pattern.component(id).is_none() {
            return Err(Error::input(format!("unknown component {id:?}")));
        }
        if !self.pattern.in_component(id, p) {
            return Err(Error::Membership(format!("{} is not in component {id}", describe(p))));
        }
        Ok(())
    }

    /// Registers `p` in component `id` together with everything reachable
    /// from it through the identification maps.
    pub fn register(&mut self, id: &str, p: SubspacePoint) -> Result<usize> {
        self.check_member(id, &p)?;
        let start = self.node(id, p);
        let mut queue = VecDeque::from([start]);
        let ids: Vec<String> = self.pattern.components.keys().cloned().collect();
        let mut seen = BTreeSet::from([start]);
        while let Some(n) = queue.pop_front() {
            let (x, q) = self.nodes[n].clone();
            for y in &ids {
                if *y == x {
                    continue;
                }
                let Some(image) = self.pattern.transfer(&x, y, &q) else { continue };
                let m = self.node(y, image);
                self.classes.union(n, m);
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        Ok(start)
    }

    fn node(&mut self, id: &str, p: SubspacePoint) -> usize {
        let key = (id.to_string(), p);
        if let Some(&n) = self.index.get(&key) {
            return n;
        }
        let n = self.classes.push();
        self.nodes.push(key.clone());
        self.index.insert(key, n);
        n
    }

    /// Canonical representative of the class of `(id, p)`: its smallest
    /// member, found by following identification maps.
    pub fn identify(&self, id: &str, p: &SubspacePoint) -> Result<(String, SubspacePoint)> {
        self.check_member(id, p)?;
        let start = (id.to_string(), p.clone());
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((x, q)) = queue.pop_front() {
            if let Some(&n) = self.index.get(&(x.clone(), q.clone())) {
                let root = self.classes.root(n);
                for (m, key) in self.nodes.iter().enumerate() {
                    if self.classes.root(m) == root && seen.insert(key.clone()) {
                        queue.push_back(key.clone());
                    }
                }
            }
            for y in self.pattern.components.keys() {
                if *y == x {
                    continue;
                }
                if let Some(image) = self.pattern.transfer(&x, y, &q) {
                    let key = (y.clone(), image);
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
        }
        Ok(seen.into_iter().next().expect("the class contains the start"))
    }

    /// Classes of registered points, each sorted, in a canonical order.
    pub fn classes(&self) -> Vec<Vec<(String, SubspacePoint)>> {
        let mut out: Vec<Vec<(String, SubspacePoint)>> = self
            .classes
            .classes()
            .into_iter()
            .map(|c| {
                let mut members: Vec<_> = c.into_iter().map(|n| self.nodes[n].clone()).collect();
                members.sort();
                members
            })
            .collect();
        out.sort();
        out
    }

    pub fn locate(&self, p: &SubspacePoint) -> Vec<String> {
        self.pattern.locate(p)
    }

    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        validate_pattern(&self.pattern, samples, seed)
    }
}

/// The components ordered by id.
pub fn components_of(b: &Bouquet) -> Vec<&Component> {
    b.components()
}

pub fn identify(b: &Bouquet, id: &str, p: &SubspacePoint) -> Result<(String, SubspacePoint)> {
    b.identify(id, p)
}

/// Components containing each sample fiber and each limit fiber of a family
/// of lines; a fiber that lands in no component is a membership error.
pub fn locate_family(b: &Bouquet, f: &SubalgebraFamily) -> Result<Vec<(LimitPoint, Vec<String>)>> {
    if f.ambient().dim() != b.pattern().ambient().dim() || f.k() != 1 {
        return Err(Error::input("expected a family of lines in the ambient of the bouquet"));
    }
    let fibers = f
        .samples()
        .iter()
        .map(|t| Ok((LimitPoint::Finite(t.clone()), f.evaluate(t)?.point())))
        .chain(f.limits().iter().map(|at| Ok((at.clone(), f.limit_fiber(at)?.point()))));
    let mut out = Vec::new();
    for fiber in fibers {
        let (at, p): (LimitPoint, SubspacePoint) = fiber?;
        let ids = b.locate(&p);
        if ids.is_empty() {
            return Err(Error::Membership(format!("fiber at {at} is {} and lies in no component", describe(&p))));
        }
        out.push((at, ids));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtins::{element, sl};
    use crate::rational::int;

    fn line(l: &LieAlgebra, m: &Matrix) -> SubspacePoint {
        SubspacePoint::from_rows(&[element(l, m).unwrap()], l.dim()).unwrap()
    }

    fn pts(l: &LieAlgebra) -> Vec<SubspacePoint> {
        [(0, 1), (0, 2), (1, 2), (1, 0)].iter().map(|&(i, j)| line(l, &Matrix::unit(3, i, j))).collect()
    }

    #[test]
    fn loci_on_sl3() {
        let l = sl(3).unwrap();
        let reg = line(&l, &Matrix::unit(3, 0, 1).add(&Matrix::unit(3, 1, 2)));
        let min = line(&l, &Matrix::unit(3, 0, 2));
        let (n2, n3) = (Locus::Nilpotent { order: 2 }, Locus::Nilpotent { order: 3 });
        assert!(n3.contains(&l, &reg) && !n2.contains(&l, &reg));
        assert!(n2.contains(&l, &min) && n3.contains(&l, &min));

        let regular = Locus::SemisimpleClosure { eigenvalues: vec![int(1), int(0), int(-1)] };
        let sub = Locus::SemisimpleClosure { eigenvalues: vec![int(2), int(-1), int(-1)] };
        let d = |a, b, c| line(&l, &Matrix::diagonal(&[int(a), int(b), int(c)]));
        assert!(regular.contains(&l, &d(0, 3, -3)));
        assert!(!regular.contains(&l, &d(2, -1, -1)));
        assert!(sub.contains(&l, &d(-1, 2, -1)) && sub.contains(&l, &d(1, 1, -2)));
        assert!(regular.contains(&l, &reg) && regular.contains(&l, &min));
        assert!(sub.contains(&l, &min) && !sub.contains(&l, &reg));
        // diag(1,1,−2) + E12 has the right characteristic polynomial but is
        // not semisimple
        let jordan = line(&l, &Matrix::diagonal(&[int(1), int(1), int(-2)]).add(&Matrix::unit(3, 0, 1)));
        assert!(!sub.contains(&l, &jordan));
        // eigenvalues ±√2, 0: irrational multiple of diag(1, 0, −1)
        let irr = line(&l, &Matrix::unit(3, 0, 1).scale(&int(2)).add(&Matrix::unit(3, 1, 0)));
        assert!(regular.contains(&l, &irr));
    }

    #[test]
    fn rational_powers() {
        assert_eq!(
            rational_roots_of_power(&rational::frac(4, 9), 2),
            vec![rational::frac(2, 3), rational::frac(-2, 3)]
        );
        assert_eq!(rational_roots_of_power(&int(-8), 3), vec![int(-2)]);
        assert!(rational_roots_of_power(&int(2), 2).is_empty());
        assert!(rational_roots_of_power(&int(-4), 2).is_empty());
    }

    fn minimal_gluing() -> GluingPattern {
        let l = sl(3).unwrap();
        let p = pts(&l);
        let mut g = GluingPattern::new(l);
        g.add_component(Component::explicit("X", vec![p[0].clone(), p[1].clone()]).unwrap()).unwrap();
        g.add_component(Component::explicit("Y", vec![p[2].clone()]).unwrap()).unwrap();
        let there = BTreeMap::from([(p[0].clone(), p[2].clone())]);
        let back = BTreeMap::from([(p[2].clone(), p[0].clone())]);
        g.set_overlap("X", "Y", ClosedSubset::Points(BTreeSet::from([p[0].clone()])), PointMap::Table(there)).unwrap();
        g.set_overlap("Y", "X", ClosedSubset::Points(BTreeSet::from([p[2].clone()])), PointMap::Table(back)).unwrap();
        g
    }

    #[test]
    fn minimal_gluing_passes() {
        let g = minimal_gluing();
        let report = validate_pattern(&g, 4, 0);
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.iter().filter(|c| c.axiom == Axiom::Symmetry).count(), 2);

        let b = Bouquet::new(g).unwrap();
        let p = pts(b.pattern().ambient());
        let a = b.identify("X", &p[0]).unwrap();
        assert_eq!(a, b.identify("Y", &p[2]).unwrap());
        assert_eq!(b.identify("X", &p[1]).unwrap(), ("X".to_string(), p[1].clone()));
        assert!(matches!(b.identify("Y", &p[3]), Err(Error::Membership(_))));
        assert_eq!(b.classes().len(), 2);
    }

    fn triple(consistent: bool) -> GluingPattern {
        let l = sl(3).unwrap();
        let p = pts(&l);
        let mut g = GluingPattern::new(l);
        g.add_component(Component::explicit("X", vec![p[0].clone()]).unwrap()).unwrap();
        g.add_component(Component::explicit("Y", vec![p[0].clone()]).unwrap()).unwrap();
        g.add_component(Component::explicit("Z", vec![p[0].clone(), p[1].clone()]).unwrap()).unwrap();
        for (x, y) in [("X", "Y"), ("Y", "Z")] {
            g.glue_along_meet(x, y).unwrap();
        }
        if consistent {
            g.glue_along_meet("X", "Z").unwrap();
        } else {
            let only = |q: &SubspacePoint| ClosedSubset::Points(BTreeSet::from([q.clone()]));
            g.set_overlap("X", "Z", only(&p[0]), PointMap::Table(BTreeMap::from([(p[0].clone(), p[1].clone())])))
                .unwrap();
            g.set_overlap("Z", "X", only(&p[1]), PointMap::Table(BTreeMap::from([(p[1].clone(), p[0].clone())])))
                .unwrap();
        }
        g
    }

    #[test]
    fn shared_point_cocycle() {
        let report = validate_pattern(&triple(true), 3, 7);
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.iter().filter(|c| c.axiom == Axiom::Cocycle).count(), 6);
    }

    #[test]
    fn inconsistent_triple_is_named() {
        let report = validate_pattern(&triple(false), 3, 7);
        assert!(!report.passed());
        let bad: Vec<&AxiomCheck> = report.failures().collect();
        assert!(bad.iter().all(|c| c.axiom == Axiom::Cocycle), "{report}");
        let names: Vec<Vec<String>> = bad.iter().map(|c| c.components.clone()).collect();
        assert!(names.contains(&vec!["X".to_string(), "Y".to_string(), "Z".to_string()]));
        let msg = bad[0].failure.as_ref().unwrap();
        assert!(msg.contains("<["), "{msg}");
    }

    #[test]
    fn broken_self_map_fails_identity() {
        let mut g = minimal_gluing();
        let p = pts(g.ambient());
        let swap = BTreeMap::from([(p[0].clone(), p[1].clone()), (p[1].clone(), p[0].clone())]);
        g.set_overlap("X", "X", ClosedSubset::Whole, PointMap::Table(swap)).unwrap();
        let report = validate_pattern(&g, 4, 0);
        let bad: Vec<&AxiomCheck> = report.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].axiom, Axiom::Identity);
    }

    #[test]
    fn empty_and_single() {
        let l = sl(3).unwrap();
        let b = Bouquet::empty(l.clone());
        assert!(components_of(&b).is_empty());
        let mut g = GluingPattern::new(l.clone());
        g.add_component(Component::explicit("only", pts(&l)).unwrap()).unwrap();
        assert_eq!(components_of(&Bouquet::new(g).unwrap()).len(), 1);
    }

    #[test]
    fn duplicate_and_foreign_samples_are_rejected() {
        let l = sl(3).unwrap();
        let p = pts(&l);
        let mut g = GluingPattern::new(l);
        g.add_component(Component::explicit("X", vec![p[0].clone()]).unwrap()).unwrap();
        assert!(g.add_component(Component::explicit("X", vec![p[1].clone()]).unwrap()).is_err());
        let mut c = Component::explicit("W", vec![p[0].clone()]).unwrap();
        c.samples.push(p[1].clone());
        assert!(matches!(g.add_component(c), Err(Error::Membership(_))));
        assert!(g.set_overlap("X", "nowhere", ClosedSubset::Meet, PointMap::Identity).is_err());
    }
}
