//! Reflection-closed interval systems over an enumerated rational point set,
//! and the 2-coloring they induce.
//!
//! For an ordered list of distinct points `a_1, a_2, …` the builder maintains
//! a family of open intervals `I = (b − h, b + h)` satisfying, at every stage:
//!
//! 1. any two intervals are disjoint or strictly nested;
//! 2. a nested interval lies entirely inside one open half `(b − h, b)` or
//!    `(b, b + h)` of each interval containing it;
//! 3. every point enumerated so far is the center of some interval;
//! 4. no interval endpoint lies in the point set;
//! 5. the family is closed under reflection: if `I' ⊆ I_γ` then the mirror
//!    of `I'` across the center of `I_γ` is also in the family.
//!
//! Two points are *orbit-linked* when one is the mirror of the other across
//! the center of an interval containing both. The induced graph is bipartite
//! (an odd cycle would give a fixed point of an odd product of reflections,
//! which is impossible), and BFS 2-coloring it yields `f : A → {0, 1}` with a
//! per-point gap `d(x)` — the radius of the interval centered at `x`, capped
//! at 1 — such that `f(x − h) ≠ f(x + h)` whenever `0 < h < d(x)` and both
//! mirror points are in the set.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Hard cap on the radius ladder `3, 3/2, 3/4, …`; hitting it means the
/// construction is wedged, which the theory rules out.
const MAX_LADDER_STEPS: u32 = 300;

// ---------------------------------------------------------------------------
// intervals
// ---------------------------------------------------------------------------

/// One open interval `(center − radius, center + radius)` of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredInterval {
    center: Rational,
    radius: Rational,
    /// Stage (1-based input position) whose insertion created this interval.
    stage: usize,
    left: Rational,
    right: Rational,
}

impl CenteredInterval {
    fn new(center: Rational, radius: Rational, stage: usize) -> Self {
        let left = &center - &radius;
        let right = &center + &radius;
        CenteredInterval {
            center,
            radius,
            stage,
            left,
            right,
        }
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    /// Left endpoint `center − radius` (excluded).
    pub fn left(&self) -> &Rational {
        &self.left
    }

    /// Right endpoint `center + radius` (excluded).
    pub fn right(&self) -> &Rational {
        &self.right
    }

    /// Reflection `x ↦ 2·center − x` as a total map on ℚ.
    pub fn mirror(&self, x: &Rational) -> Rational {
        self.center.double() - x
    }

    /// Strict interior test.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.left < x && x < &self.right
    }
}

// ---------------------------------------------------------------------------
// the system
// ---------------------------------------------------------------------------

/// A staged, reflection-closed interval system over an enumerated point set.
#[derive(Debug, Clone)]
pub struct IntervalSystem {
    points: Vec<Rational>,
    point_set: HashSet<Rational>,
    intervals: Vec<CenteredInterval>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>, // each list sorted by left endpoint
    roots: Vec<usize>,         // sorted by left endpoint
    by_center: HashMap<Rational, usize>,
}

impl IntervalSystem {
    /// Builds the full system for an ordered point list.
    ///
    /// The whole list is known up front, so interval endpoints are chosen to
    /// avoid every point, including ones not yet staged. Duplicate points are
    /// an input error.
    pub fn build(points: &[Rational]) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p.clone()) {
                return Err(Error::input(format!(
                    "duplicate point {p} at position {}",
                    i + 1
                )));
            }
        }
        let avoid: HashSet<Rational> = points.iter().cloned().collect();
        let mut sys = IntervalSystem::empty();
        for p in points {
            sys.insert_point(p.clone(), &avoid)?;
        }
        Ok(sys)
    }

    fn empty() -> Self {
        IntervalSystem {
            points: Vec::new(),
            point_set: HashSet::new(),
            intervals: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            roots: Vec::new(),
            by_center: HashMap::new(),
        }
    }

    /// Appends one more point to the enumeration and extends the system.
    ///
    /// Endpoints of already-frozen intervals were chosen without knowledge of
    /// `p`; if `p` lands exactly on one, extending would silently break the
    /// endpoint-avoidance invariant, so that case is rejected — build from
    /// the full list instead.
    pub fn push_point(&mut self, p: Rational) -> Result<()> {
        if self.point_set.contains(&p) {
            return Err(Error::input(format!("duplicate point {p}")));
        }
        for iv in &self.intervals {
            if iv.left() == &p || iv.right() == &p {
                return Err(Error::input(format!(
                    "point {p} coincides with a frozen interval endpoint; \
                     rebuild from the full point list"
                )));
            }
        }
        let mut avoid = self.point_set.clone();
        avoid.insert(p.clone());
        self.insert_point(p, &avoid)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn intervals(&self) -> &[CenteredInterval] {
        &self.intervals
    }

    pub fn parent_of(&self, id: usize) -> Option<usize> {
        self.parent.get(id).copied().flatten()
    }

    /// Interval ids present after stage `n` (1-based; `n = 0` is empty).
    pub fn ids_through_stage(&self, n: usize) -> Vec<usize> {
        (0..self.intervals.len())
            .filter(|&i| self.intervals[i].stage <= n)
            .collect()
    }

    /// Reflection across the center of interval `id`, restricted to its
    /// interior (the natural domain of the orbit map).
    pub fn reflect(&self, id: usize, x: &Rational) -> Result<Rational> {
        let iv = self
            .intervals
            .get(id)
            .ok_or_else(|| Error::input(format!("no interval with id {id}")))?;
        if !iv.contains(x) {
            return Err(Error::domain(format!(
                "{x} is outside interval {id} = ({}, {})",
                iv.left(),
                iv.right()
            )));
        }
        Ok(iv.mirror(x))
    }

    /// Deepest interval strictly containing `x`, if any.
    pub fn deepest_containing(&self, x: &Rational) -> Option<usize> {
        let mut found = None;
        let mut level: &[usize] = &self.roots;
        loop {
            let pos = level.partition_point(|&id| self.intervals[id].left() < x);
            if pos == 0 {
                return found;
            }
            let cand = level[pos - 1];
            if self.intervals[cand].contains(x) {
                found = Some(cand);
                level = &self.children[cand];
            } else {
                return found;
            }
        }
    }

    /// All intervals strictly containing `x`, outermost first.
    fn chain_containing(&self, x: &Rational) -> Vec<usize> {
        let mut chain = Vec::new();
        let mut level: &[usize] = &self.roots;
        loop {
            let pos = level.partition_point(|&id| self.intervals[id].left() < x);
            if pos == 0 {
                return chain;
            }
            let cand = level[pos - 1];
            if self.intervals[cand].contains(x) {
                chain.push(cand);
                level = &self.children[cand];
            } else {
                return chain;
            }
        }
    }

    // -- construction -------------------------------------------------------

    fn insert_point(&mut self, a: Rational, avoid: &HashSet<Rational>) -> Result<()> {
        self.points.push(a.clone());
        self.point_set.insert(a.clone());
        let stage = self.points.len();

        // Already a center: the stage adds no intervals.
        if self.by_center.contains_key(&a) {
            return Ok(());
        }

        // The nested chain of intervals containing `a`, outermost first.
        let chain = self.chain_containing(&a);
        let r = chain.len();
        if r >= 63 {
            return Err(Error::resource(format!(
                "nesting depth {r} at point {a} exceeds the supported range"
            )));
        }

        // Orbit of `a` under the applicable reflection products: one image
        // per subset of the chain, applied innermost-first. The images do
        // not depend on the radius, so compute them once.
        let mut image_centers: Vec<Rational> = Vec::with_capacity(1 << r);
        for eps in 0u64..(1u64 << r) {
            let mut point = a.clone();
            for i in (0..r).rev() {
                if eps & (1 << i) != 0 {
                    point = self.intervals[chain[i]].mirror(&point);
                }
            }
            image_centers.push(point);
        }

        // Distinct images, none of which may collide with an existing center:
        // a collision would mean an odd product of reflections fixes a point.
        {
            let mut seen = HashSet::new();
            for c in &image_centers {
                if !seen.insert(c.clone()) {
                    return Err(Error::soundness(format!(
                        "reflection images of {a} are not pairwise distinct"
                    )));
                }
                if self.by_center.contains_key(c) {
                    return Err(Error::soundness(format!(
                        "reflection image {c} of {a} collides with an existing center"
                    )));
                }
            }
        }

        // Per image: the deepest interval containing it (its future parent)
        // and the largest radius that fits in the parent half without
        // touching any sibling. Both are radius-independent.
        struct Placement {
            parent: Option<usize>,
            clearance: Option<Rational>, // None = unbounded (no neighbors at all)
        }
        let mut placements = Vec::with_capacity(image_centers.len());
        for c in &image_centers {
            let parent = self.deepest_containing(c);
            let mut clearance: Option<Rational> = None;
            let mut shrink = |bound: Rational| {
                if clearance.as_ref().map_or(true, |cur| &bound < cur) {
                    clearance = Some(bound);
                }
            };
            let siblings: &[usize] = match parent {
                Some(p) => {
                    let iv = &self.intervals[p];
                    // Fit inside the open half of the parent on c's side.
                    if c < iv.center() {
                        shrink(c - iv.left());
                        shrink(iv.center() - c);
                    } else {
                        shrink(c - iv.center());
                        shrink(iv.right() - c);
                    }
                    &self.children[p]
                }
                None => &self.roots,
            };
            // Clearance to the flanking disjoint intervals at this level.
            let pos = siblings.partition_point(|&id| self.intervals[id].left() < c);
            if pos > 0 {
                let prev = &self.intervals[siblings[pos - 1]];
                // `c` is not inside prev (parent is the deepest container),
                // so prev ends at or before c.
                shrink(c - prev.right());
            }
            if pos < siblings.len() {
                let next = &self.intervals[siblings[pos]];
                shrink(next.left() - c);
            }
            if let Some(cl) = &clearance {
                if !cl.is_positive() {
                    return Err(Error::soundness(format!(
                        "no room for an interval around reflection image {c} of {a}"
                    )));
                }
            }
            placements.push(Placement { parent, clearance });
        }

        // Mutual clearance among the images themselves (all get radius h,
        // so they must stay at distance ≥ 2h from each other).
        let mut pair_gap: Option<Rational> = None;
        if image_centers.len() > 1 {
            let mut sorted = image_centers.clone();
            sorted.sort();
            for w in sorted.windows(2) {
                let gap = (&w[1] - &w[0]).half();
                if pair_gap.as_ref().map_or(true, |g| &gap < g) {
                    pair_gap = Some(gap);
                }
            }
        }

        // Radius ladder: first h = 3/2^t that fits everywhere and whose
        // image endpoints all avoid the point set.
        let three = Rational::from_int(3);
        let mut h = three;
        for _ in 0..MAX_LADDER_STEPS {
            let fits = placements
                .iter()
                .all(|p| p.clearance.as_ref().map_or(true, |cl| &h <= cl))
                && pair_gap.as_ref().map_or(true, |g| &h <= g);
            if fits {
                let endpoints_clear = image_centers.iter().all(|c| {
                    !avoid.contains(&(c - &h)) && !avoid.contains(&(c + &h))
                });
                if endpoints_clear {
                    // Commit all images at this radius.
                    for (c, place) in image_centers.iter().zip(&placements) {
                        self.attach(
                            CenteredInterval::new(c.clone(), h.clone(), stage),
                            place.parent,
                        );
                    }
                    return Ok(());
                }
            }
            h = h.half();
        }
        Err(Error::soundness(format!(
            "radius ladder for {a} exhausted {MAX_LADDER_STEPS} steps"
        )))
    }

    fn attach(&mut self, iv: CenteredInterval, parent: Option<usize>) {
        let id = self.intervals.len();
        self.by_center.insert(iv.center.clone(), id);
        let list = match parent {
            Some(p) => &mut self.children[p],
            None => &mut self.roots,
        };
        let pos = {
            let intervals = &self.intervals;
            list.partition_point(|&other| intervals[other].left < iv.left)
        };
        list.insert(pos, id);
        self.intervals.push(iv);
        self.parent.push(parent);
        self.children.push(Vec::new());
    }

    // -- invariants ---------------------------------------------------------

    /// Checks the five structural invariants plus internal bookkeeping.
    ///
    /// Works from the raw interval list, not the maintained tree, so it also
    /// catches bookkeeping drift. Any violation is a soundness error.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.intervals.len();

        // Radii come from the ladder 3/2^t and stages are plausible.
        for (id, iv) in self.intervals.iter().enumerate() {
            if !iv.radius.is_positive() {
                return Err(Error::soundness(format!("interval {id} has radius ≤ 0")));
            }
            let mut r = Rational::from_int(3);
            let mut on_ladder = false;
            for _ in 0..=MAX_LADDER_STEPS {
                if r == iv.radius {
                    on_ladder = true;
                    break;
                }
                r = r.half();
            }
            if !on_ladder {
                return Err(Error::soundness(format!(
                    "interval {id} radius {} is not of the form 3/2^t",
                    iv.radius
                )));
            }
            if iv.stage == 0 || iv.stage > self.points.len() {
                return Err(Error::soundness(format!(
                    "interval {id} has stage {} outside 1..={}",
                    iv.stage,
                    self.points.len()
                )));
            }
        }

        // (1) laminar family: sweep sorted by (left asc, right desc) with a
        // containment stack; this also recomputes every parent.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (ia, ib) = (&self.intervals[a], &self.intervals[b]);
            ia.left
                .cmp(&ib.left)
                .then_with(|| ib.right.cmp(&ia.right))
                .then_with(|| a.cmp(&b))
        });
        let mut stack: Vec<usize> = Vec::new();
        let mut derived_parent = vec![None; n];
        for &id in &order {
            let iv = &self.intervals[id];
            while let Some(&top) = stack.last() {
                if self.intervals[top].right <= iv.left {
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = stack.last() {
                let t = &self.intervals[top];
                if iv.right > t.right || (iv.left == t.left && iv.right == t.right) {
                    return Err(Error::soundness(format!(
                        "invariant (1): intervals {top} and {id} overlap without nesting"
                    )));
                }
                derived_parent[id] = Some(top);
            }
            stack.push(id);
        }
        if derived_parent != self.parent {
            return Err(Error::soundness(
                "interval tree bookkeeping disagrees with recomputed containment".to_string(),
            ));
        }

        // (2) each interval sits in one open half of every ancestor.
        for id in 0..n {
            let iv = &self.intervals[id];
            let mut anc = derived_parent[id];
            while let Some(g) = anc {
                let giv = &self.intervals[g];
                let in_left_half = iv.right <= giv.center && iv.left >= giv.left;
                let in_right_half = iv.left >= giv.center && iv.right <= giv.right;
                if !(in_left_half || in_right_half) {
                    return Err(Error::soundness(format!(
                        "invariant (2): interval {id} straddles the center of ancestor {g}"
                    )));
                }
                if iv.stage < giv.stage {
                    return Err(Error::soundness(format!(
                        "interval {id} (stage {}) is nested in later interval {g} (stage {})",
                        iv.stage, giv.stage
                    )));
                }
                anc = derived_parent[g];
            }
        }

        // (3) every point is a center. Centers are unique as a side effect.
        let mut centers: HashMap<&Rational, usize> = HashMap::new();
        for (id, iv) in self.intervals.iter().enumerate() {
            if centers.insert(&iv.center, id).is_some() {
                return Err(Error::soundness(format!(
                    "two intervals share the center {}",
                    iv.center
                )));
            }
        }
        for p in &self.points {
            if !centers.contains_key(p) {
                return Err(Error::soundness(format!(
                    "invariant (3): point {p} is the center of no interval"
                )));
            }
        }

        // (4) endpoints avoid the point set.
        for (id, iv) in self.intervals.iter().enumerate() {
            if self.point_set.contains(&iv.left) || self.point_set.contains(&iv.right) {
                return Err(Error::soundness(format!(
                    "invariant (4): an endpoint of interval {id} lies in the point set"
                )));
            }
        }

        // (5) reflection closure across every ancestor.
        let mut by_center_radius: HashMap<(&Rational, &Rational), usize> = HashMap::new();
        for (id, iv) in self.intervals.iter().enumerate() {
            by_center_radius.insert((&iv.center, &iv.radius), id);
        }
        for id in 0..n {
            let mut anc = derived_parent[id];
            while let Some(g) = anc {
                let mirrored = self.intervals[g].mirror(&self.intervals[id].center);
                if !by_center_radius.contains_key(&(&mirrored, &self.intervals[id].radius)) {
                    return Err(Error::soundness(format!(
                        "invariant (5): mirror of interval {id} across ancestor {g} is missing"
                    )));
                }
                anc = derived_parent[g];
            }
        }

        Ok(())
    }

    // -- coloring -----------------------------------------------------------

    /// Orbit edges as point-index pairs `(u, v)` with `u < v`.
    fn orbit_edges(&self) -> Vec<(usize, usize)> {
        let index_of: HashMap<&Rational, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut sorted: Vec<usize> = (0..self.points.len()).collect();
        sorted.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));

        let mut edges = HashSet::new();
        for iv in &self.intervals {
            let lo = sorted.partition_point(|&i| self.points[i] <= *iv.left());
            let hi = sorted.partition_point(|&i| self.points[i] < *iv.right());
            for &pi in &sorted[lo..hi] {
                let p = &self.points[pi];
                if p == iv.center() {
                    continue;
                }
                let q = iv.mirror(p);
                if let Some(&qi) = index_of.get(&q) {
                    edges.insert((pi.min(qi), pi.max(qi)));
                }
            }
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        edges
    }

    /// Two-colors the point set through the orbit graph.
    ///
    /// Components are colored by BFS; the anchor of each component is its
    /// earliest-enumerated point and receives color 0. The gap `d(x)` is the
    /// radius of the interval centered at `x`, capped at 1. An odd orbit
    /// cycle would make 2-coloring impossible and is a soundness error.
    pub fn color(&self) -> Result<AntisymmetricColoring> {
        let n = self.points.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.orbit_edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut colors: Vec<Option<u8>> = vec![None; n];
        for anchor in 0..n {
            if colors[anchor].is_some() {
                continue;
            }
            colors[anchor] = Some(0);
            let mut queue = VecDeque::from([anchor]);
            while let Some(u) = queue.pop_front() {
                let cu = colors[u].unwrap();
                for &v in &adj[u] {
                    match colors[v] {
                        None => {
                            colors[v] = Some(1 - cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Err(Error::soundness(format!(
                                "odd reflection cycle through {} and {}",
                                self.points[u], self.points[v]
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }

        let one = Rational::one();
        let mut f = BTreeMap::new();
        let mut d = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            let id = *self.by_center.get(p).ok_or_else(|| {
                Error::soundness(format!("point {p} is the center of no interval"))
            })?;
            let radius = self.intervals[id].radius();
            let gap = if radius < &one { radius.clone() } else { one.clone() };
            f.insert(p.clone(), colors[i].unwrap());
            d.insert(p.clone(), gap);
        }
        Ok(AntisymmetricColoring { f, d })
    }

    // -- serialization ------------------------------------------------------

    /// Canonical JSON document: the enumeration plus one record per interval.
    pub fn to_json(&self) -> Value {
        let intervals: Vec<Value> = self
            .intervals
            .iter()
            .enumerate()
            .map(|(id, iv)| {
                json!({
                    "center": iv.center.to_string(),
                    "id": id,
                    "parent": self.parent[id],
                    "radius": iv.radius.to_string(),
                    "stage": iv.stage,
                })
            })
            .collect();
        json!({
            "intervals": intervals,
            "points": self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Parses a document produced by [`IntervalSystem::to_json`], rebuilding
    /// and validating the containment tree.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::input("system document is not an object".to_string()))?;
        let points_v = obj
            .get("points")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::input("system document lacks a points array".to_string()))?;
        let mut points = Vec::new();
        for v in points_v {
            let s = v
                .as_str()
                .ok_or_else(|| Error::input("point entries must be strings".to_string()))?;
            points.push(s.parse::<Rational>()?);
        }
        let ivs_v = obj
            .get("intervals")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::input("system document lacks an intervals array".to_string()))?;

        let mut intervals = Vec::new();
        let mut declared_parent = Vec::new();
        for (i, v) in ivs_v.iter().enumerate() {
            let rec = v
                .as_object()
                .ok_or_else(|| Error::input(format!("interval {i} is not an object")))?;
            let id = rec.get("id").and_then(|x| x.as_u64()).map(|x| x as usize);
            if id != Some(i) {
                return Err(Error::input(format!(
                    "interval ids must be 0..n in order; record {i} declares {id:?}"
                )));
            }
            let center: Rational = rec
                .get("center")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::input(format!("interval {i} lacks a center")))?
                .parse()?;
            let radius: Rational = rec
                .get("radius")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::input(format!("interval {i} lacks a radius")))?
                .parse()?;
            if !radius.is_positive() {
                return Err(Error::input(format!("interval {i} has radius ≤ 0")));
            }
            let stage = rec
                .get("stage")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::input(format!("interval {i} lacks a stage")))?
                as usize;
            let parent = match rec.get("parent") {
                Some(Value::Null) | None => None,
                Some(p) => Some(
                    p.as_u64()
                        .ok_or_else(|| Error::input(format!("interval {i} has a bad parent")))?
                        as usize,
                ),
            };
            intervals.push(CenteredInterval::new(center, radius, stage));
            declared_parent.push(parent);
        }

        let mut sys = IntervalSystem {
            points: points.clone(),
            point_set: points.into_iter().collect(),
            intervals,
            parent: declared_parent,
            children: Vec::new(),
            roots: Vec::new(),
            by_center: HashMap::new(),
        };
        if sys.point_set.len() != sys.points.len() {
            return Err(Error::input("duplicate points in document".to_string()));
        }

        // Rebuild children/roots from declared parents, ordering by left
        // endpoint, and rebuild the center index.
        sys.children = vec![Vec::new(); sys.intervals.len()];
        for (id, &p) in sys.parent.iter().enumerate() {
            match p {
                Some(p) => {
                    if p >= sys.intervals.len() {
                        return Err(Error::input(format!(
                            "interval {id} declares out-of-range parent {p}"
                        )));
                    }
                    sys.children[p].push(id);
                }
                None => sys.roots.push(id),
            }
        }
        let ivs = &sys.intervals;
        for list in sys.children.iter_mut() {
            list.sort_by(|&a, &b| ivs[a].left.cmp(&ivs[b].left));
        }
        sys.roots.sort_by(|&a, &b| ivs[a].left.cmp(&ivs[b].left));
        for (id, iv) in sys.intervals.iter().enumerate() {
            if sys.by_center.insert(iv.center.clone(), id).is_some() {
                return Err(Error::input(format!(
                    "two intervals share the center {}",
                    iv.center
                )));
            }
        }

        // The declared tree must match recomputed containment; this is part
        // of the invariant check, which a loaded system must pass outright.
        sys.check_invariants()?;
        Ok(sys)
    }
}

// ---------------------------------------------------------------------------
// colorings and verification
// ---------------------------------------------------------------------------

/// A 2-coloring with per-point gaps, totally defined on its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetricColoring {
    /// Color of each point, 0 or 1.
    pub f: BTreeMap<Rational, u8>,
    /// Positive gap below which mirror pairs around the point must differ.
    pub d: BTreeMap<Rational, Rational>,
}

impl AntisymmetricColoring {
    /// Canonical JSON: one `{color, d, point}` record per point, point-sorted.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .f
            .iter()
            .map(|(p, c)| {
                json!({
                    "color": c,
                    "d": self.d.get(p).map(|v| v.to_string()),
                    "point": p.to_string(),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

/// One failure of the antisymmetry property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetryViolation {
    /// Center point whose gap was violated.
    pub x: Rational,
    /// Offset with `0 < h < d(x)` and equal colors at `x ± h`.
    pub h: Rational,
    pub minus: Rational,
    pub plus: Rational,
}

/// Exhaustively checks the antisymmetry property over the coloring's domain.
///
/// Scans every unordered pair `{u, v}` of domain points; when their midpoint
/// `x` is in the domain, `h = (v − u)/2` is below `d(x)`, and the colors at
/// `u` and `v` agree, that pair is a violation. Sound colorings return an
/// empty list.
pub fn verify_antisymmetric(coloring: &AntisymmetricColoring) -> Vec<AntisymmetryViolation> {
    let pts: Vec<&Rational> = coloring.f.keys().collect();
    let mut violations = Vec::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (u, v) = (pts[i], pts[j]);
            let x = Rational::midpoint(u, v);
            let Some(dx) = coloring.d.get(&x) else {
                continue;
            };
            let h = (v - u).half();
            if &h < dx && coloring.f[u] == coloring.f[v] {
                violations.push(AntisymmetryViolation {
                    x,
                    h,
                    minus: u.clone(),
                    plus: v.clone(),
                });
            }
        }
    }
    violations
}
