//! Compact 2-orbifolds with cone points, mirrors and corner reflectors.
//!
//! An [`Orbifold2`] is described by its underlying topological surface
//! (orientability, genus, number of boundary circles of the surface) plus the
//! singular data: cone points and, on each circle of the underlying surface,
//! a cyclic word of mirror arcs and boundary segments.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("cone point of order {0}: orders must be at least 2")]
    ConeOrderTooSmall(u32),
    #[error("corner reflector of order {0}: orders must be at least 2")]
    CornerOrderTooSmall(u32),
    #[error("mixed boundary circle with an empty word")]
    EmptyMixedWord,
    #[error("corner orders must sit exactly between two adjacent mirrors ({0})")]
    CornerMismatch(String),
    #[error("a non-orientable surface needs at least one cross-cap")]
    NonOrientableGenusZero,
    #[error("orbifold is not hyperbolic (chi = {0})")]
    NotHyperbolic(Rational64),
    #[error("cannot parse circle word: {0}")]
    BadWord(String),
}

/// One arc of a circle of the underlying surface.
///
/// `Mirror { corner: Some(r) }` is a mirror followed by a corner reflector of
/// order `r`; the next arc in the cyclic word is then a mirror as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Arc {
    Boundary,
    Mirror { corner: Option<u32> },
}

impl Arc {
    pub fn is_mirror(self) -> bool {
        matches!(self, Arc::Mirror { .. })
    }
}

// Token form used for canonical ordering: corners become separate letters so
// that reflection is a plain reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Boundary,
    Mirror,
    Corner(u32),
}

fn to_tokens(arcs: &[Arc]) -> Vec<Token> {
    let mut out = Vec::with_capacity(arcs.len() * 2);
    for arc in arcs {
        match *arc {
            Arc::Boundary => out.push(Token::Boundary),
            Arc::Mirror { corner } => {
                out.push(Token::Mirror);
                if let Some(r) = corner {
                    out.push(Token::Corner(r));
                }
            }
        }
    }
    out
}

fn from_tokens(tokens: &[Token]) -> Vec<Arc> {
    let mut out: Vec<Arc> = Vec::with_capacity(tokens.len());
    for t in tokens {
        match *t {
            Token::Boundary => out.push(Arc::Boundary),
            Token::Mirror => out.push(Arc::Mirror { corner: None }),
            Token::Corner(r) => {
                if let Some(Arc::Mirror { corner }) = out.last_mut() {
                    *corner = Some(r);
                }
            }
        }
    }
    out
}

/// Lexicographically least rotation/reflection of a (normalized) word.
fn canonical_word(arcs: &[Arc]) -> Vec<Arc> {
    let forward = to_tokens(arcs);
    let mut backward = forward.clone();
    backward.reverse();
    let mut best: Option<Vec<Token>> = None;
    for seq in [forward, backward] {
        let n = seq.len();
        for start in 0..n {
            if matches!(seq[start], Token::Corner(_)) {
                continue;
            }
            let rot: Vec<Token> = seq[start..].iter().chain(&seq[..start]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    from_tokens(&best.unwrap_or_default())
}

/// A circle of the underlying topological surface.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoundaryCircle {
    /// The whole circle is a boundary component of the orbifold.
    Plain,
    /// A cyclic word of mirrors and boundary segments. A lone mirror without
    /// corner is a closed mirror circle.
    Mixed(Vec<Arc>),
}

impl BoundaryCircle {
    pub fn mirrors(&self) -> usize {
        match self {
            BoundaryCircle::Plain => 0,
            BoundaryCircle::Mixed(w) => w.iter().filter(|a| a.is_mirror()).count(),
        }
    }

    pub fn segments(&self) -> usize {
        match self {
            BoundaryCircle::Plain => 0,
            BoundaryCircle::Mixed(w) => w.iter().filter(|a| !a.is_mirror()).count(),
        }
    }

    pub fn corners(&self) -> impl Iterator<Item = u32> + '_ {
        let word: &[Arc] = match self {
            BoundaryCircle::Plain => &[],
            BoundaryCircle::Mixed(w) => w,
        };
        word.iter().filter_map(|a| match a {
            Arc::Mirror { corner } => *corner,
            Arc::Boundary => None,
        })
    }

    /// Points where a mirror meets a boundary segment.
    pub fn junctions(&self) -> usize {
        match self {
            BoundaryCircle::Plain => 0,
            BoundaryCircle::Mixed(w) if w.len() < 2 => 0,
            BoundaryCircle::Mixed(w) => (0..w.len())
                .filter(|&i| w[i].is_mirror() != w[(i + 1) % w.len()].is_mirror())
                .count(),
        }
    }

    /// A circle with no mirror, or a single closed mirror.
    pub fn is_simple(&self) -> bool {
        match self {
            BoundaryCircle::Plain => true,
            BoundaryCircle::Mixed(w) => w.as_slice() == [Arc::Mirror { corner: None }],
        }
    }

    pub fn is_closed_mirror(&self) -> bool {
        matches!(self, BoundaryCircle::Mixed(w) if w.as_slice() == [Arc::Mirror { corner: None }])
    }

    fn normalize(&self) -> Result<BoundaryCircle, OrbifoldError> {
        let word = match self {
            BoundaryCircle::Plain => return Ok(BoundaryCircle::Plain),
            BoundaryCircle::Mixed(w) => w,
        };
        if word.is_empty() {
            return Err(OrbifoldError::EmptyMixedWord);
        }
        for r in self.corners() {
            if r < 2 {
                return Err(OrbifoldError::CornerOrderTooSmall(r));
            }
        }
        if word.iter().all(|a| !a.is_mirror()) {
            return Ok(BoundaryCircle::Plain);
        }
        // merge cyclically adjacent boundary segments
        let n = word.len();
        let mut merged: Vec<Arc> = Vec::with_capacity(n);
        for (i, arc) in word.iter().enumerate() {
            if *arc == Arc::Boundary && word[(i + 1) % n] == Arc::Boundary && n > 1 {
                continue;
            }
            merged.push(*arc);
        }
        let m = merged.len();
        for i in 0..m {
            if let Arc::Mirror { corner } = merged[i] {
                let next_is_mirror = m > 1 && merged[(i + 1) % m].is_mirror();
                match (corner.is_some(), next_is_mirror) {
                    (true, false) => {
                        return Err(OrbifoldError::CornerMismatch(
                            "corner before a boundary segment or on a closed mirror".into(),
                        ))
                    }
                    (false, true) => {
                        return Err(OrbifoldError::CornerMismatch(
                            "two adjacent mirrors without a corner order".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(BoundaryCircle::Mixed(canonical_word(&merged)))
    }
}

impl fmt::Display for BoundaryCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCircle::Plain => f.write_str("plain"),
            BoundaryCircle::Mixed(w) => {
                for (i, arc) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match arc {
                        Arc::Boundary => f.write_str("B")?,
                        Arc::Mirror { corner: None } => f.write_str("M")?,
                        Arc::Mirror { corner: Some(r) } => write!(f, "M({r})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for BoundaryCircle {
    type Err = OrbifoldError;

    /// `plain`, or a word such as `M(2) M B M(2) M B`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("plain") {
            return Ok(BoundaryCircle::Plain);
        }
        let mut arcs = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                ' ' | '\t' | ',' => continue,
                'B' => arcs.push(Arc::Boundary),
                'M' => {
                    let mut corner = None;
                    if chars.peek() == Some(&'(') {
                        chars.next();
                        let mut digits = String::new();
                        for d in chars.by_ref() {
                            if d == ')' {
                                break;
                            }
                            digits.push(d);
                        }
                        let r: u32 = digits
                            .trim()
                            .parse()
                            .map_err(|_| OrbifoldError::BadWord(s.to_string()))?;
                        corner = Some(r);
                    }
                    arcs.push(Arc::Mirror { corner });
                }
                _ => return Err(OrbifoldError::BadWord(s.to_string())),
            }
        }
        Ok(BoundaryCircle::Mixed(arcs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Orbifold2 {
    /// Orientability of the underlying topological surface.
    pub orientable: bool,
    /// Handles if orientable, cross-caps otherwise.
    pub genus: u32,
    pub cone_points: Vec<u32>,
    pub circles: Vec<BoundaryCircle>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Circle,
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryGroup {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "D_infinity")]
    DInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub kind: ComponentKind,
    pub group: BoundaryGroup,
}

/// Which of the four families of orbifolds without essential simple closed
/// geodesics an orbifold belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SmallVerdict {
    pub small: bool,
    pub family: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum McgFamily {
    /// `(S^2,3)`: sphere with three of cones / circular boundaries / circular mirrors.
    S2Three,
    /// `(S^2,2)`: annulus, one non-simple circle, one other simple feature.
    S2Two,
    /// `(S^2,1)`: disc with non-simple boundary, no cone.
    S2One,
    /// `(P^2,2)`: projective plane with two simple features.
    P2Two,
    /// `(P^2,1)`: Möbius band with non-simple boundary, no cone.
    P2One,
}

impl fmt::Display for McgFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McgFamily::S2Three => "(S2,3)",
            McgFamily::S2Two => "(S2,2)",
            McgFamily::S2One => "(S2,1)",
            McgFamily::P2Two => "(P2,2)",
            McgFamily::P2One => "(P2,1)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McgVerdict {
    pub finite: bool,
    pub family: Option<McgFamily>,
}

impl Orbifold2 {
    pub fn closed(orientable: bool, genus: u32) -> Self {
        Orbifold2 {
            orientable,
            genus,
            cone_points: Vec::new(),
            circles: Vec::new(),
        }
    }

    pub fn sphere_with_cones(cones: &[u32]) -> Self {
        Orbifold2 {
            cone_points: cones.to_vec(),
            ..Orbifold2::closed(true, 0)
        }
    }

    /// Planar surface with `n` plain boundary circles.
    pub fn planar(n: usize) -> Self {
        Orbifold2 {
            circles: vec![BoundaryCircle::Plain; n],
            ..Orbifold2::closed(true, 0)
        }
    }

    pub fn with_cones(mut self, cones: &[u32]) -> Self {
        self.cone_points.extend_from_slice(cones);
        self
    }

    pub fn with_circle(mut self, circle: BoundaryCircle) -> Self {
        self.circles.push(circle);
        self
    }

    /// Checks the invariants and returns the normalized orbifold: cones
    /// sorted, adjacent boundary segments merged, each mixed word in its
    /// least rotation/reflection, circles sorted.
    pub fn validate(&self) -> Result<Orbifold2, OrbifoldError> {
        if !self.orientable && self.genus == 0 {
            return Err(OrbifoldError::NonOrientableGenusZero);
        }
        if let Some(&q) = self.cone_points.iter().find(|&&q| q < 2) {
            return Err(OrbifoldError::ConeOrderTooSmall(q));
        }
        let mut cone_points = self.cone_points.clone();
        cone_points.sort_unstable();
        let mut circles = self
            .circles
            .iter()
            .map(BoundaryCircle::normalize)
            .collect::<Result<Vec<_>, _>>()?;
        circles.sort();
        Ok(Orbifold2 {
            orientable: self.orientable,
            genus: self.genus,
            cone_points,
            circles,
        })
    }

    /// Euler characteristic of the underlying surface (cone points and
    /// mirrors ignored).
    pub fn topological_euler_characteristic(&self) -> i64 {
        let b = self.circles.len() as i64;
        let g = i64::from(self.genus);
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }

    pub fn euler_characteristic(&self) -> Rational64 {
        let one = Rational64::from_integer(1);
        let half = Rational64::new(1, 2);
        let mut chi = Rational64::from_integer(self.topological_euler_characteristic());
        for &q in &self.cone_points {
            chi -= one - Rational64::new(1, i64::from(q));
        }
        for circle in &self.circles {
            for r in circle.corners() {
                chi -= half * (one - Rational64::new(1, i64::from(r)));
            }
            chi -= Rational64::new(circle.junctions() as i64, 4);
        }
        chi
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic() < Rational64::from_integer(0)
    }

    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let mut out = Vec::new();
        for circle in &self.circles {
            match circle {
                BoundaryCircle::Plain => out.push(BoundaryComponent {
                    kind: ComponentKind::Circle,
                    group: BoundaryGroup::Z,
                }),
                BoundaryCircle::Mixed(_) => {
                    for _ in 0..circle.segments() {
                        out.push(BoundaryComponent {
                            kind: ComponentKind::Segment,
                            group: BoundaryGroup::DInfinity,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn mirror_count(&self) -> usize {
        self.circles.iter().map(BoundaryCircle::mirrors).sum()
    }

    fn require_hyperbolic(&self) -> Result<(), OrbifoldError> {
        let chi = self.euler_characteristic();
        if chi < Rational64::from_integer(0) {
            Ok(())
        } else {
            Err(OrbifoldError::NotHyperbolic(chi))
        }
    }

    /// Matches the orbifold against the four families of hyperbolic
    /// orbifolds containing no essential simple closed geodesic.
    ///
    /// Expects a validated orbifold.
    pub fn is_small(&self) -> Result<SmallVerdict, OrbifoldError> {
        self.require_hyperbolic()?;
        let family = self.small_family();
        Ok(SmallVerdict {
            small: family.is_some(),
            family,
        })
    }

    fn small_family(&self) -> Option<u8> {
        if !self.orientable || self.genus != 0 {
            return None;
        }
        let cones = self.cone_points.len();
        let circles = self.circles.len();
        let mirrors = self.mirror_count();
        let mirror_seg = BoundaryCircle::Mixed(vec![Arc::Boundary, Arc::Mirror { corner: None }]);
        if mirrors == 0 {
            return (cones + circles == 3).then_some(1);
        }
        if circles == 1 && cones == 1 && self.circles[0] == mirror_seg {
            return Some(2);
        }
        if circles == 2
            && cones == 0
            && self.circles.contains(&BoundaryCircle::Plain)
            && self.circles.contains(&mirror_seg)
        {
            return Some(3);
        }
        if circles == 1 && cones == 0 && mirrors == 3 && self.circles[0].segments() <= 3 {
            return Some(4);
        }
        None
    }

    /// Matches the orbifold against the list of hyperbolic orbifolds with
    /// finite mapping class group. Anything outside the list's shapes is
    /// reported infinite.
    pub fn has_finite_mcg(&self) -> Result<McgVerdict, OrbifoldError> {
        self.require_hyperbolic()?;
        let family = self.mcg_family();
        Ok(McgVerdict {
            finite: family.is_some(),
            family,
        })
    }

    fn mcg_family(&self) -> Option<McgFamily> {
        let cones = self.cone_points.len();
        let simple = self.circles.iter().filter(|c| c.is_simple()).count();
        let non_simple = self.circles.len() - simple;
        match (self.orientable, self.genus) {
            (true, 0) => match non_simple {
                0 if cones + simple == 3 => Some(McgFamily::S2Three),
                1 if cones + simple == 1 => Some(McgFamily::S2Two),
                1 if cones + simple == 0 => Some(McgFamily::S2One),
                _ => None,
            },
            (false, 1) => match non_simple {
                0 if cones + simple == 2 => Some(McgFamily::P2Two),
                1 if cones == 0 && simple == 0 => Some(McgFamily::P2One),
                _ => None,
            },
            _ => None,
        }
    }

    /// genus + circles + cones + mirror arcs + boundary segments.
    pub fn feature_count(&self) -> usize {
        let arcs: usize = self
            .circles
            .iter()
            .map(|c| match c {
                BoundaryCircle::Plain => 0,
                BoundaryCircle::Mixed(w) => w.len(),
            })
            .sum();
        self.genus as usize + self.circles.len() + self.cone_points.len() + arcs
    }

    /// Largest cone or corner order appearing.
    pub fn max_order(&self) -> u32 {
        let corners = self.circles.iter().flat_map(|c| c.corners());
        self.cone_points.iter().copied().chain(corners).max().unwrap_or(0)
    }
}

impl fmt::Display for Orbifold2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.orientable { "orientable" } else { "nonorientable" };
        write!(f, "{kind} genus {}", self.genus)?;
        if !self.cone_points.is_empty() {
            let cones: Vec<String> = self.cone_points.iter().map(u32::to_string).collect();
            write!(f, "; cones {}", cones.join(","))?;
        }
        for c in &self.circles {
            write!(f, "; circle {c}")?;
        }
        Ok(())
    }
}

/// All normalized mixed circle words with `1..=max_arcs` arcs and corner
/// orders in `2..=max_order`, canonical and duplicate-free.
pub fn mixed_words(max_arcs: usize, max_order: u32) -> Vec<BoundaryCircle> {
    let mut seen = BTreeSet::new();
    for n in 1..=max_arcs {
        for mask in 0u32..(1 << n) {
            let kinds: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            if kinds.iter().all(|&m| !m) {
                continue;
            }
            // skip words that would merge into shorter ones
            if n > 1 && (0..n).any(|i| !kinds[i] && !kinds[(i + 1) % n]) {
                continue;
            }
            let corner_slots: Vec<usize> = (0..n)
                .filter(|&i| n > 1 && kinds[i] && kinds[(i + 1) % n])
                .collect();
            let orders: Vec<u32> = (2..=max_order).collect();
            if !corner_slots.is_empty() && orders.is_empty() {
                continue;
            }
            let mut choice = vec![0usize; corner_slots.len()];
            loop {
                let mut arcs: Vec<Arc> = kinds
                    .iter()
                    .map(|&m| if m { Arc::Mirror { corner: None } } else { Arc::Boundary })
                    .collect();
                for (slot, &c) in corner_slots.iter().zip(&choice) {
                    arcs[*slot] = Arc::Mirror {
                        corner: Some(orders[c]),
                    };
                }
                if let Ok(circle) = BoundaryCircle::Mixed(arcs).normalize() {
                    seen.insert(circle);
                }
                // odometer
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < orders.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn multisets<T: Clone>(items: &[(T, usize)], budget: usize, start: usize, out: &mut Vec<(Vec<T>, usize)>, cur: &mut Vec<T>, cost: usize) {
    out.push((cur.clone(), cost));
    for i in start..items.len() {
        let (item, c) = &items[i];
        if cost + c <= budget {
            cur.push(item.clone());
            multisets(items, budget, i, out, cur, cost + c);
            cur.pop();
        }
    }
}

/// Every validated orbifold with feature count in `1..=budget` and all
/// cone/corner orders at most `budget`, in canonical form and sorted.
pub fn enumerate(budget: usize) -> Vec<Orbifold2> {
    if budget == 0 {
        return Vec::new();
    }
    let max_order = budget as u32;
    let cone_items: Vec<(u32, usize)> = (2..=max_order).map(|q| (q, 1)).collect();
    let mut circle_items: Vec<(BoundaryCircle, usize)> = vec![(BoundaryCircle::Plain, 1)];
    for w in mixed_words(budget.saturating_sub(1), max_order) {
        let cost = 1 + match &w {
            BoundaryCircle::Mixed(a) => a.len(),
            BoundaryCircle::Plain => 0,
        };
        circle_items.push((w, cost));
    }

    let mut cone_sets = Vec::new();
    multisets(&cone_items, budget, 0, &mut cone_sets, &mut Vec::new(), 0);
    let mut circle_sets = Vec::new();
    multisets(&circle_items, budget, 0, &mut circle_sets, &mut Vec::new(), 0);

    let mut out = BTreeSet::new();
    for orientable in [true, false] {
        let min_genus = if orientable { 0 } else { 1 };
        for genus in min_genus..=budget {
            for (circles, circle_cost) in &circle_sets {
                if genus + circle_cost > budget {
                    continue;
                }
                for (cones, cone_cost) in &cone_sets {
                    let total = genus + circle_cost + cone_cost;
                    if total == 0 || total > budget {
                        continue;
                    }
                    let o = Orbifold2 {
                        orientable,
                        genus: genus as u32,
                        cone_points: cones.clone(),
                        circles: circles.clone(),
                    };
                    if let Ok(v) = o.validate() {
                        out.insert(v);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
