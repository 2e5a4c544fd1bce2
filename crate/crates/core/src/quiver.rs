//! Bound quivers with monomial relations: the data model for a string
//! algebra, its path combinatorics, and the line-oriented text format.
//!
//! A path is stored as a sequence of arrow ids and composes left to right:
//! in the path `ab` the arrow `a` is traversed first, so `t(a) = s(b)`.
//! Membership of a path in the relation ideal is "some relation occurs as a
//! contiguous subpath", which is the whole story for monomial ideals.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index into the sorted vertex table of a quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index into the sorted arrow table of a quiver.
///
/// Arrows are interned in lexicographic name order, so comparing ids agrees
/// with comparing names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

impl Quiver {
    /// Builds a quiver from raw vertex names and `(name, source, target)`
    /// arrow triples. Names are interned in sorted order.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_names = vertices;
        vertex_names.sort();
        if let Some(w) = vertex_names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::parse(0, 0, format!("duplicate vertex {}", w[0])));
        }
        let vertex_index: HashMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i as u32)))
            .collect();

        let mut named: Vec<(String, String, String)> = arrows;
        named.sort_by(|x, y| x.0.cmp(&y.0));
        if let Some(w) = named.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::parse(0, 0, format!("duplicate arrow {}", w[0].0)));
        }
        let mut arrows = Vec::with_capacity(named.len());
        for (name, src, tgt) in named {
            let source = *vertex_index
                .get(&src)
                .ok_or_else(|| Error::parse(0, 0, format!("unknown vertex {src}")))?;
            let target = *vertex_index
                .get(&tgt)
                .ok_or_else(|| Error::parse(0, 0, format!("unknown vertex {tgt}")))?;
            arrows.push(Arrow {
                name,
                source,
                target,
            });
        }
        let arrow_index: HashMap<String, ArrowId> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrowId(i as u32)))
            .collect();
        let mut out_arrows = vec![Vec::new(); vertex_names.len()];
        let mut in_arrows = vec![Vec::new(); vertex_names.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_arrows[a.source.0 as usize].push(ArrowId(i as u32));
            in_arrows[a.target.0 as usize].push(ArrowId(i as u32));
        }
        Ok(Quiver {
            vertex_names,
            arrows,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(|i| VertexId(i as u32))
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(|i| ArrowId(i as u32))
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0 as usize]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0 as usize]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn arrows_from(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v.0 as usize]
    }

    pub fn arrows_into(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v.0 as usize]
    }
}

/// A composable sequence of arrows, or a trivial path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(VertexId),
    Arrows(Vec<ArrowId>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        match self {
            Path::Trivial(_) => &[],
            Path::Arrows(a) => a,
        }
    }

    pub fn first_arrow(&self) -> Option<ArrowId> {
        self.arrows().first().copied()
    }

    pub fn last_arrow(&self) -> Option<ArrowId> {
        self.arrows().last().copied()
    }

    /// Does `self` end with the arrow sequence of `suffix`?
    pub fn ends_with(&self, suffix: &Path) -> bool {
        let s = suffix.arrows();
        let a = self.arrows();
        a.len() >= s.len() && &a[a.len() - s.len()..] == s
    }
}

/// The global ordering used for every set-valued output: length first, then
/// lexicographic on arrow names (ids are interned in name order).
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Path::Trivial(v), Path::Trivial(w)) => v.cmp(w),
            (Path::Trivial(_), Path::Arrows(_)) => std::cmp::Ordering::Less,
            (Path::Arrows(_), Path::Trivial(_)) => std::cmp::Ordering::Greater,
            (Path::Arrows(a), Path::Arrows(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Product of two basis paths in the algebra: another basis path, or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathProduct {
    Zero,
    Nonzero(Path),
}

impl PathProduct {
    pub fn is_zero(&self) -> bool {
        matches!(self, PathProduct::Zero)
    }

    pub fn into_path(self) -> Option<Path> {
        match self {
            PathProduct::Zero => None,
            PathProduct::Nonzero(p) => Some(p),
        }
    }
}

/// Rule identifiers for the string-algebra validation report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Condition 1: at most two arrows start/end at any vertex.
    VertexDegree,
    /// Condition 2: each arrow has at most one nonzero continuation arrow.
    UniqueContinuation,
    /// Condition 3: each arrow has at most one nonzero predecessor arrow.
    UniquePredecessor,
    /// The ideal is generated by paths of length >= 2.
    Monomial,
    /// The ideal is admissible (no relation-free cycle).
    Admissible,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::VertexDegree => "1",
            Rule::UniqueContinuation => "2",
            Rule::UniquePredecessor => "3",
            Rule::Monomial => "monomial",
            Rule::Admissible => "admissible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub rule: Rule,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_string_algebra(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.violations.is_empty() {
            "string algebra".to_string()
        } else {
            self.violations
                .iter()
                .map(|v| format!("rule {}: {}", v.rule.id(), v.witness))
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

/// A quiver together with generators of a monomial admissible ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<Vec<ArrowId>>,
}

impl BoundQuiver {
    /// Builds and checks a bound quiver: relations must be composable arrow
    /// sequences of length >= 2, the ideal must be admissible, and relation
    /// generators containing another generator are dropped as redundant.
    pub fn new(quiver: Quiver, relations: Vec<Vec<ArrowId>>) -> Result<Self> {
        for rel in &relations {
            if rel.len() < 2 {
                return Err(Error::parse(0, 0, "relation of length < 2".to_string()));
            }
            for w in rel.windows(2) {
                let (x, y) = (quiver.arrow(w[0]), quiver.arrow(w[1]));
                if x.target != y.source {
                    return Err(Error::NotComposable {
                        left: x.name.clone(),
                        left_target: quiver.vertex_name(x.target).to_string(),
                        right: y.name.clone(),
                        right_source: quiver.vertex_name(y.source).to_string(),
                    });
                }
            }
        }
        let mut relations = relations;
        relations.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        relations.dedup();
        // Drop generators that contain a shorter generator as a subword.
        let kept: Vec<Vec<ArrowId>> = relations
            .iter()
            .filter(|r| {
                !relations
                    .iter()
                    .any(|s| s.len() < r.len() && contains_subword_slice(r, s))
            })
            .cloned()
            .collect();
        let bq = BoundQuiver {
            quiver,
            relations: kept,
        };
        if let Some(cycle) = bq.relation_free_cycle() {
            let names: Vec<&str> = cycle.iter().map(|a| bq.quiver.arrow(*a).name.as_str()).collect();
            return Err(Error::NotAdmissible {
                cycle: names.join(" "),
            });
        }
        Ok(bq)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Vec<ArrowId>] {
        &self.relations
    }

    pub fn trivial(&self, v: VertexId) -> Path {
        Path::Trivial(v)
    }

    /// Checks composability and relation-freeness of an arrow sequence and
    /// wraps it as a `Path`.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::Precondition {
                expected: "nonempty arrow sequence".into(),
                actual: "empty".into(),
            });
        }
        for w in arrows.windows(2) {
            let (x, y) = (self.quiver.arrow(w[0]), self.quiver.arrow(w[1]));
            if x.target != y.source {
                return Err(Error::NotComposable {
                    left: x.name.clone(),
                    left_target: self.quiver.vertex_name(x.target).to_string(),
                    right: y.name.clone(),
                    right_source: self.quiver.vertex_name(y.source).to_string(),
                });
            }
        }
        if !self.is_nonzero(arrows) {
            return Err(Error::Precondition {
                expected: "path outside the ideal".into(),
                actual: format!("{} contains a relation", self.arrow_names(arrows).join("")),
            });
        }
        Ok(Path::Arrows(arrows.to_vec()))
    }

    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let ids = names
            .iter()
            .map(|n| {
                self.quiver
                    .arrow_by_name(n)
                    .ok_or_else(|| Error::parse(0, 0, format!("unknown arrow {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path(&ids)
    }

    /// True when no relation occurs as a contiguous subword.
    pub fn is_nonzero(&self, arrows: &[ArrowId]) -> bool {
        !self
            .relations
            .iter()
            .any(|r| contains_subword_slice(arrows, r))
    }

    /// Zero test for the product of two relation-free paths: a relation in
    /// the concatenation must straddle the junction, so only those windows
    /// are scanned.
    pub fn junction_obstructed(&self, p: &[ArrowId], q: &[ArrowId]) -> bool {
        let n = p.len() + q.len();
        for r in &self.relations {
            let k = r.len();
            if k > n {
                continue;
            }
            let lo = p.len().saturating_sub(k - 1);
            let hi = (p.len().wrapping_sub(1)).min(n - k);
            if p.is_empty() || lo > hi {
                continue;
            }
            for s in lo..=hi {
                let matched = r.iter().enumerate().all(|(i, &ra)| {
                    let idx = s + i;
                    if idx < p.len() {
                        p[idx] == ra
                    } else {
                        q[idx - p.len()] == ra
                    }
                });
                if matched {
                    return true;
                }
            }
        }
        false
    }

    pub fn path_source(&self, p: &Path) -> VertexId {
        match p {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => self.quiver.arrow(a[0]).source,
        }
    }

    pub fn path_target(&self, p: &Path) -> VertexId {
        match p {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => self.quiver.arrow(*a.last().unwrap()).target,
        }
    }

    /// Concatenation in the algebra. Trivial paths act as identities;
    /// relation hits give `Zero`; mismatched endpoints are an error.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<PathProduct> {
        if self.path_target(p) != self.path_source(q) {
            return Err(Error::NotComposable {
                left: self.path_label(p),
                left_target: self.quiver.vertex_name(self.path_target(p)).to_string(),
                right: self.path_label(q),
                right_source: self.quiver.vertex_name(self.path_source(q)).to_string(),
            });
        }
        match (p, q) {
            (Path::Trivial(_), _) => Ok(PathProduct::Nonzero(q.clone())),
            (_, Path::Trivial(_)) => Ok(PathProduct::Nonzero(p.clone())),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut joined = a.clone();
                joined.extend_from_slice(b);
                if self.is_nonzero(&joined) {
                    Ok(PathProduct::Nonzero(Path::Arrows(joined)))
                } else {
                    Ok(PathProduct::Zero)
                }
            }
        }
    }

    /// All paths avoiding the ideal with length >= `min_len`, in the global
    /// order. Admissibility (checked at construction) keeps this finite.
    pub fn enumerate_paths(&self, min_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = Vec::new();
        if min_len == 0 {
            out.extend(self.quiver.vertices().map(Path::Trivial));
        }
        let mut frontier: Vec<Vec<ArrowId>> =
            self.quiver.arrow_ids().map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                if p.len() >= min_len {
                    out.push(Path::Arrows(p.clone()));
                }
                let end = self.quiver.arrow(*p.last().unwrap()).target;
                for &a in self.quiver.arrows_from(end) {
                    let mut q = p.clone();
                    q.push(a);
                    if self.is_nonzero(&q) {
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// Checks the special-biserial conditions plus monomial generation and
    /// admissibility, reporting every violation.
    pub fn validate_string_algebra(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for v in self.quiver.vertices() {
            let outs = self.quiver.arrows_from(v);
            if outs.len() > 2 {
                violations.push(Violation {
                    rule: Rule::VertexDegree,
                    witness: format!(
                        "vertex {} is the source of {} arrows: {}",
                        self.quiver.vertex_name(v),
                        outs.len(),
                        self.arrow_names(outs).join(" ")
                    ),
                });
            }
            let ins = self.quiver.arrows_into(v);
            if ins.len() > 2 {
                violations.push(Violation {
                    rule: Rule::VertexDegree,
                    witness: format!(
                        "vertex {} is the target of {} arrows: {}",
                        self.quiver.vertex_name(v),
                        ins.len(),
                        self.arrow_names(ins).join(" ")
                    ),
                });
            }
        }
        for a in self.quiver.arrow_ids() {
            let arrow = self.quiver.arrow(a);
            let conts: Vec<ArrowId> = self
                .quiver
                .arrows_from(arrow.target)
                .iter()
                .copied()
                .filter(|&b| {
                    let pair = [a, b];
                    self.is_nonzero(&pair)
                })
                .collect();
            if conts.len() > 1 {
                violations.push(Violation {
                    rule: Rule::UniqueContinuation,
                    witness: format!(
                        "arrow {} has {} nonzero continuations: {}",
                        arrow.name,
                        conts.len(),
                        self.arrow_names(&conts).join(" ")
                    ),
                });
            }
            let preds: Vec<ArrowId> = self
                .quiver
                .arrows_into(arrow.source)
                .iter()
                .copied()
                .filter(|&c| {
                    let pair = [c, a];
                    self.is_nonzero(&pair)
                })
                .collect();
            if preds.len() > 1 {
                violations.push(Violation {
                    rule: Rule::UniquePredecessor,
                    witness: format!(
                        "arrow {} has {} nonzero predecessors: {}",
                        arrow.name,
                        preds.len(),
                        self.arrow_names(&preds).join(" ")
                    ),
                });
            }
        }
        if let Some(rel) = self.relations.iter().find(|r| r.len() < 2) {
            violations.push(Violation {
                rule: Rule::Monomial,
                witness: format!("relation {} has length < 2", self.arrow_names(rel).join("")),
            });
        }
        if let Some(cycle) = self.relation_free_cycle() {
            violations.push(Violation {
                rule: Rule::Admissible,
                witness: format!(
                    "relation-free cycle through {}",
                    self.arrow_names(&cycle).join(" ")
                ),
            });
        }
        ValidationReport { violations }
    }

    /// Searches the sliding-window graph of relation-free paths for a
    /// directed cycle; `Some(cycle arrows)` means the ideal is inadmissible.
    fn relation_free_cycle(&self) -> Option<Vec<ArrowId>> {
        let window = self
            .relations
            .iter()
            .map(|r| r.len())
            .max()
            .unwrap_or(2)
            .max(2)
            - 1;
        // States: relation-free paths of length `window`. A cycle among them
        // pumps arbitrarily long relation-free paths and conversely.
        let mut states: Vec<Vec<ArrowId>> = Vec::new();
        let mut frontier: Vec<Vec<ArrowId>> =
            self.quiver.arrow_ids().map(|a| vec![a]).collect();
        for _ in 1..window {
            let mut next = Vec::new();
            for p in frontier {
                let end = self.quiver.arrow(*p.last().unwrap()).target;
                for &a in self.quiver.arrows_from(end) {
                    let mut q = p.clone();
                    q.push(a);
                    if self.is_nonzero(&q) {
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        states.extend(frontier);
        let index: HashMap<&[ArrowId], usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
        for (i, s) in states.iter().enumerate() {
            let end = self.quiver.arrow(*s.last().unwrap()).target;
            for &a in self.quiver.arrows_from(end) {
                let mut extended = s.clone();
                extended.push(a);
                // The old window was relation-free, so any relation in the
                // extension must be a suffix.
                let hit = self
                    .relations
                    .iter()
                    .any(|r| r.len() <= extended.len() && extended.ends_with(r.as_slice()));
                if !hit {
                    let key = &extended[1..];
                    if let Some(&j) = index.get(key) {
                        edges[i].push(j);
                    }
                }
            }
        }
        // Iterative three-color DFS; on a back edge, report the stack cycle.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; states.len()];
        for start in 0..states.len() {
            if color[start] != Color::White {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            color[start] = Color::Gray;
            let mut path: Vec<usize> = vec![start];
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next < edges[node].len() {
                    let to = edges[node][*next];
                    *next += 1;
                    match color[to] {
                        Color::White => {
                            color[to] = Color::Gray;
                            stack.push((to, 0));
                            path.push(to);
                        }
                        Color::Gray => {
                            let pos = path.iter().position(|&n| n == to).unwrap();
                            let cycle: Vec<ArrowId> = path[pos..]
                                .iter()
                                .map(|&n| *states[n].last().unwrap())
                                .collect();
                            return Some(cycle);
                        }
                        Color::Black => {}
                    }
                } else {
                    color[node] = Color::Black;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }

    pub fn path_label(&self, p: &Path) -> String {
        match p {
            Path::Trivial(v) => format!("e_{}", self.quiver.vertex_name(*v)),
            Path::Arrows(a) => self.arrow_names(a).join(""),
        }
    }

    fn arrow_names(&self, ids: &[ArrowId]) -> Vec<&str> {
        ids.iter().map(|a| self.quiver.arrow(*a).name.as_str()).collect()
    }

    /// Parses the line-oriented bound-quiver format:
    ///
    /// ```text
    /// # comment
    /// vertices 1 2 3
    /// arrow a 1 2
    /// rel a b
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows: Vec<(String, String, String)> = Vec::new();
        let mut rels: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let tokens = tokenize(line);
            if tokens.is_empty() {
                continue;
            }
            let (col0, head) = &tokens[0];
            let rest = &tokens[1..];
            match head.as_str() {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(Error::parse(lineno, *col0, "duplicate vertices line"));
                    }
                    if rest.is_empty() {
                        return Err(Error::parse(lineno, *col0, "vertices line needs at least one id"));
                    }
                    for (col, tok) in rest {
                        if !tok.chars().all(|c| c.is_ascii_alphanumeric()) {
                            return Err(Error::parse(
                                lineno,
                                *col,
                                format!("vertex id {tok:?} is not alphanumeric"),
                            ));
                        }
                    }
                    vertices = Some(rest.iter().map(|(_, t)| t.clone()).collect());
                }
                "arrow" => {
                    if rest.len() != 3 {
                        return Err(Error::parse(
                            lineno,
                            *col0,
                            "arrow line needs: arrow <name> <source> <target>",
                        ));
                    }
                    arrows.push((rest[0].1.clone(), rest[1].1.clone(), rest[2].1.clone()));
                }
                "rel" => {
                    if rest.len() < 2 {
                        return Err(Error::parse(lineno, *col0, "relation needs at least 2 arrows"));
                    }
                    rels.push((lineno, rest.to_vec()));
                }
                other => {
                    return Err(Error::parse(
                        lineno,
                        *col0,
                        format!("unknown directive {other:?}"),
                    ));
                }
            }
        }
        let vertices = vertices.ok_or_else(|| Error::parse(0, 0, "missing vertices line"))?;
        let quiver = Quiver::new(vertices, arrows)?;
        let mut relations = Vec::new();
        for (lineno, toks) in rels {
            let mut rel = Vec::new();
            for (col, name) in toks {
                match quiver.arrow_by_name(&name) {
                    Some(id) => rel.push(id),
                    None => {
                        return Err(Error::parse(lineno, col, format!("unknown arrow {name}")));
                    }
                }
            }
            relations.push(rel);
        }
        BoundQuiver::new(quiver, relations)
    }

    /// Canonical printer: sorted vertices, arrows, and relations. Parsing the
    /// output reproduces an equal bound quiver.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("vertices");
        for v in &self.quiver.vertex_names {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for a in &self.quiver.arrows {
            out.push_str(&format!(
                "arrow {} {} {}\n",
                a.name,
                self.quiver.vertex_name(a.source),
                self.quiver.vertex_name(a.target)
            ));
        }
        for r in &self.relations {
            out.push_str("rel");
            for name in self.arrow_names(r) {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn tokenize(line: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

fn contains_subword_slice(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    if needle.is_empty() || needle.len() > hay.len() {
        return false;
    }
    hay.windows(needle.len()).any(|w| w == needle)
}
