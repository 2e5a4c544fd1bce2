//! Walks, strings, and generalized strings.
//!
//! A letter is a nonzero path traversed forwards or backwards; a generalized
//! walk is a connected sequence of letters. Junction rules decide which
//! walks are generalized strings: same-direction neighbors must multiply to
//! zero, mixed junctions must expand to a string of arrows. The degree
//! profile (+1 per direct letter, -1 per inverse letter) fixes the
//! homological degree of every position.

use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, BoundQuiver, Path, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Direct,
    Inverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Direct => Direction::Inverse,
            Direction::Inverse => Direction::Direct,
        }
    }
}

/// A nonzero path with a traversal direction. The stored path is always the
/// underlying direct path; an inverse letter is a view with endpoints
/// swapped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub path: Path,
    pub direction: Direction,
}

impl Letter {
    pub fn direct(path: Path) -> Self {
        Letter {
            path,
            direction: Direction::Direct,
        }
    }

    pub fn inverse(path: Path) -> Self {
        Letter {
            path,
            direction: Direction::Inverse,
        }
    }

    pub fn is_direct(&self) -> bool {
        self.direction == Direction::Direct
    }

    pub fn flip(&self) -> Letter {
        Letter {
            path: self.path.clone(),
            direction: self.direction.flip(),
        }
    }

    pub fn source(&self, bq: &BoundQuiver) -> VertexId {
        match self.direction {
            Direction::Direct => bq.path_source(&self.path),
            Direction::Inverse => bq.path_target(&self.path),
        }
    }

    pub fn target(&self, bq: &BoundQuiver) -> VertexId {
        match self.direction {
            Direction::Direct => bq.path_target(&self.path),
            Direction::Inverse => bq.path_source(&self.path),
        }
    }

    pub fn label(&self, bq: &BoundQuiver) -> String {
        let core = if self.path.len() == 1 {
            bq.path_label(&self.path)
        } else {
            let names: Vec<String> = self
                .path
                .arrows()
                .iter()
                .map(|&a| bq.quiver().arrow(a).name.clone())
                .collect();
            format!("({})", names.join(" "))
        };
        match self.direction {
            Direction::Direct => core,
            Direction::Inverse => format!("{core}~"),
        }
    }
}

/// A trivial walk at a vertex, or a nonempty connected letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneralizedWalk {
    Trivial(VertexId),
    Letters(Vec<Letter>),
}

impl Ord for GeneralizedWalk {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (GeneralizedWalk::Trivial(v), GeneralizedWalk::Trivial(w)) => v.cmp(w),
            (GeneralizedWalk::Trivial(_), GeneralizedWalk::Letters(_)) => std::cmp::Ordering::Less,
            (GeneralizedWalk::Letters(_), GeneralizedWalk::Trivial(_)) => {
                std::cmp::Ordering::Greater
            }
            (GeneralizedWalk::Letters(a), GeneralizedWalk::Letters(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
        }
    }
}

impl PartialOrd for GeneralizedWalk {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl GeneralizedWalk {
    pub fn trivial(v: VertexId) -> Self {
        GeneralizedWalk::Trivial(v)
    }

    /// Validates connectivity of the letter sequence.
    pub fn from_letters(bq: &BoundQuiver, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Precondition {
                expected: "at least one letter".into(),
                actual: "empty letter sequence".into(),
            });
        }
        for pair in letters.windows(2) {
            if pair[0].target(bq) != pair[1].source(bq) {
                return Err(Error::NotComposable {
                    left: pair[0].label(bq),
                    left_target: bq.quiver().vertex_name(pair[0].target(bq)).to_string(),
                    right: pair[1].label(bq),
                    right_source: bq.quiver().vertex_name(pair[1].source(bq)).to_string(),
                });
            }
        }
        Ok(GeneralizedWalk::Letters(letters))
    }

    pub fn len(&self) -> usize {
        match self {
            GeneralizedWalk::Trivial(_) => 0,
            GeneralizedWalk::Letters(l) => l.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GeneralizedWalk::Trivial(_))
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            GeneralizedWalk::Trivial(_) => &[],
            GeneralizedWalk::Letters(l) => l,
        }
    }

    pub fn source(&self, bq: &BoundQuiver) -> VertexId {
        match self {
            GeneralizedWalk::Trivial(v) => *v,
            GeneralizedWalk::Letters(l) => l[0].source(bq),
        }
    }

    pub fn target(&self, bq: &BoundQuiver) -> VertexId {
        match self {
            GeneralizedWalk::Trivial(v) => *v,
            GeneralizedWalk::Letters(l) => l.last().unwrap().target(bq),
        }
    }

    pub fn is_closed(&self, bq: &BoundQuiver) -> bool {
        self.source(bq) == self.target(bq)
    }

    /// Reverses letter order and flips every direction; an involution.
    pub fn invert(&self) -> GeneralizedWalk {
        match self {
            GeneralizedWalk::Trivial(v) => GeneralizedWalk::Trivial(*v),
            GeneralizedWalk::Letters(l) => {
                GeneralizedWalk::Letters(l.iter().rev().map(Letter::flip).collect())
            }
        }
    }

    /// Cyclic permutation of a closed walk: letters `j+1..n` then `1..j`.
    pub fn rotate(&self, bq: &BoundQuiver, j: usize) -> Result<GeneralizedWalk> {
        if !self.is_closed(bq) {
            return Err(Error::NotClosed);
        }
        let n = self.len();
        if j == 0 || j >= n {
            return Err(Error::RotationOutOfRange {
                index: j,
                max: n.saturating_sub(1),
            });
        }
        let letters = self.letters();
        let mut rotated = letters[j..].to_vec();
        rotated.extend_from_slice(&letters[..j]);
        GeneralizedWalk::from_letters(bq, rotated)
    }

    /// Partial sums of +1 per direct and -1 per inverse letter, indexed by
    /// positions `0..=n`. The minimum ranges over all positions including 0,
    /// which is what pins degree 0 complexes of single direct letters.
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut values = Vec::with_capacity(self.len() + 1);
        values.push(0i64);
        for letter in self.letters() {
            let prev = *values.last().unwrap();
            values.push(match letter.direction {
                Direction::Direct => prev + 1,
                Direction::Inverse => prev - 1,
            });
        }
        DegreeProfile { values }
    }

    /// The representative of `{walk, walk.invert()}`: the end of the profile
    /// must not be below the start, ties broken toward the lexicographically
    /// smaller letter sequence.
    pub fn canonicalize(&self) -> GeneralizedWalk {
        match self {
            GeneralizedWalk::Trivial(_) => self.clone(),
            GeneralizedWalk::Letters(letters) => {
                let end = self.degree_profile().end();
                if end > 0 {
                    self.clone()
                } else if end < 0 {
                    self.invert()
                } else {
                    let inv = self.invert();
                    if letters.as_slice() <= inv.letters() {
                        self.clone()
                    } else {
                        inv
                    }
                }
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Expands every letter to single arrows, preserving directions.
    pub fn expand_arrows(&self) -> GeneralizedWalk {
        match self {
            GeneralizedWalk::Trivial(v) => GeneralizedWalk::Trivial(*v),
            GeneralizedWalk::Letters(letters) => {
                let mut out = Vec::new();
                for letter in letters {
                    match letter.direction {
                        Direction::Direct => {
                            for &a in letter.path.arrows() {
                                out.push(Letter::direct(Path::Arrows(vec![a])));
                            }
                        }
                        Direction::Inverse => {
                            for &a in letter.path.arrows().iter().rev() {
                                out.push(Letter::inverse(Path::Arrows(vec![a])));
                            }
                        }
                    }
                }
                GeneralizedWalk::Letters(out)
            }
        }
    }

    pub fn label(&self, bq: &BoundQuiver) -> String {
        match self {
            GeneralizedWalk::Trivial(v) => format!("e_{}", bq.quiver().vertex_name(*v)),
            GeneralizedWalk::Letters(letters) => letters
                .iter()
                .map(|l| l.label(bq))
                .collect::<Vec<_>>()
                .join(" . "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub values: Vec<i64>,
}

impl DegreeProfile {
    pub fn min(&self) -> i64 {
        *self.values.iter().min().unwrap()
    }

    pub fn max(&self) -> i64 {
        *self.values.iter().max().unwrap()
    }

    pub fn end(&self) -> i64 {
        *self.values.last().unwrap()
    }

    /// The minimum taken over positions `1..=n` only. Differs from `min`
    /// exactly on profiles that never return to their starting level; see
    /// `diverges_from_positive_convention`.
    pub fn min_excluding_start(&self) -> Option<i64> {
        self.values[1..].iter().copied().min()
    }

    /// True when the two minimum conventions disagree on this walk, so
    /// callers can surface a note instead of silently picking one.
    pub fn diverges_from_positive_convention(&self) -> bool {
        match self.min_excluding_start() {
            Some(m) => m != self.min(),
            None => false,
        }
    }
}

/// Walk syntax: dot-separated letters with parenthesized multi-arrow paths,
/// or whitespace-separated single arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkSyntax {
    StringWalk,
    Generalized,
}

#[derive(Debug, PartialEq)]
enum Token {
    Ident(usize, String),
    Tilde(usize),
    Dot(usize),
    LParen(usize),
    RParen(usize),
}

fn lex_walk(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = i + 1;
        match c {
            '~' => {
                tokens.push(Token::Tilde(col));
                chars.next();
            }
            '.' => {
                tokens.push(Token::Dot(col));
                chars.next();
            }
            '(' => {
                tokens.push(Token::LParen(col));
                chars.next();
            }
            ')' => {
                tokens.push(Token::RParen(col));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(col, ident));
            }
            other => {
                return Err(Error::parse(1, col, format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(tokens)
}

fn resolve_arrow(bq: &BoundQuiver, col: usize, name: &str) -> Result<ArrowId> {
    bq.quiver()
        .arrow_by_name(name)
        .ok_or_else(|| Error::parse(1, col, format!("unknown arrow {name}")))
}

fn letter_from_arrows(bq: &BoundQuiver, col: usize, arrows: Vec<ArrowId>, inverse: bool) -> Result<Letter> {
    let path = match bq.path(&arrows) {
        Ok(p) => p,
        Err(Error::Precondition { actual, .. }) => {
            return Err(Error::parse(
                1,
                col,
                format!("letter path hits a relation: {actual}"),
            ));
        }
        Err(e) => return Err(e),
    };
    Ok(if inverse {
        Letter::inverse(path)
    } else {
        Letter::direct(path)
    })
}

fn trivial_walk_from_ident(bq: &BoundQuiver, name: &str) -> Option<GeneralizedWalk> {
    let rest = name.strip_prefix("e_")?;
    let v = bq.quiver().vertex_by_name(rest)?;
    Some(GeneralizedWalk::Trivial(v))
}

/// Parses a walk expression. `StringWalk` mode takes whitespace-separated
/// single arrows; `Generalized` mode takes dot-separated letters where a
/// letter is an arrow name or a parenthesized arrow sequence, with `~` for
/// inverse. `e_<vertex>` alone is the trivial walk in either mode.
pub fn parse_walk(text: &str, bq: &BoundQuiver, syntax: WalkSyntax) -> Result<GeneralizedWalk> {
    let tokens = lex_walk(text)?;
    if tokens.is_empty() {
        return Err(Error::parse(1, 1, "empty walk"));
    }
    // A trivial walk, optionally with the formal inverse marker (inverting
    // a trivial walk is the identity).
    if let Token::Ident(_, name) = &tokens[0] {
        if tokens.len() == 1 || (tokens.len() == 2 && matches!(tokens[1], Token::Tilde(_))) {
            if let Some(w) = trivial_walk_from_ident(bq, name) {
                return Ok(w);
            }
        }
    }
    match syntax {
        WalkSyntax::StringWalk => {
            let mut letters = Vec::new();
            let mut iter = tokens.iter().peekable();
            while let Some(tok) = iter.next() {
                match tok {
                    Token::Ident(col, name) => {
                        let arrow = resolve_arrow(bq, *col, name)?;
                        let inverse = matches!(iter.peek(), Some(Token::Tilde(_)));
                        if inverse {
                            iter.next();
                        }
                        letters.push(letter_from_arrows(bq, *col, vec![arrow], inverse)?);
                    }
                    Token::Dot(col) | Token::LParen(col) | Token::RParen(col) => {
                        return Err(Error::parse(
                            1,
                            *col,
                            "string-walk syntax takes whitespace-separated arrows only",
                        ));
                    }
                    Token::Tilde(col) => {
                        return Err(Error::parse(1, *col, "dangling ~"));
                    }
                }
            }
            GeneralizedWalk::from_letters(bq, letters)
        }
        WalkSyntax::Generalized => {
            let mut letters = Vec::new();
            let mut iter = tokens.iter().peekable();
            loop {
                let (col, arrows) = match iter.next() {
                    Some(Token::Ident(col, name)) => {
                        (*col, vec![resolve_arrow(bq, *col, name)?])
                    }
                    Some(Token::LParen(col)) => {
                        let mut arrows = Vec::new();
                        loop {
                            match iter.next() {
                                Some(Token::Ident(c, name)) => {
                                    arrows.push(resolve_arrow(bq, *c, name)?)
                                }
                                Some(Token::RParen(_)) => break,
                                Some(Token::Dot(c)) | Some(Token::Tilde(c))
                                | Some(Token::LParen(c)) => {
                                    return Err(Error::parse(
                                        1,
                                        *c,
                                        "only arrow names allowed inside parentheses",
                                    ));
                                }
                                None => {
                                    return Err(Error::parse(1, *col, "unclosed parenthesis"));
                                }
                            }
                        }
                        if arrows.is_empty() {
                            return Err(Error::parse(1, *col, "empty parenthesized letter"));
                        }
                        (*col, arrows)
                    }
                    Some(Token::Dot(col)) => {
                        return Err(Error::parse(1, *col, "expected a letter before '.'"));
                    }
                    Some(Token::Tilde(col)) => {
                        return Err(Error::parse(1, *col, "dangling ~"));
                    }
                    Some(Token::RParen(col)) => {
                        return Err(Error::parse(1, *col, "unmatched ')'"));
                    }
                    // Only reachable after a separator: a trailing dot.
                    None => {
                        return Err(Error::parse(1, text.chars().count(), "expected a letter after '.'"));
                    }
                };
                let inverse = matches!(iter.peek(), Some(Token::Tilde(_)));
                if inverse {
                    iter.next();
                }
                letters.push(letter_from_arrows(bq, col, arrows, inverse)?);
                match iter.next() {
                    Some(Token::Dot(_)) => continue,
                    None => break,
                    Some(Token::Ident(col, _)) | Some(Token::LParen(col)) => {
                        return Err(Error::parse(
                            1,
                            *col,
                            "expected '.' between letters; write (a b) for one multi-arrow letter",
                        ));
                    }
                    Some(Token::Tilde(col)) | Some(Token::RParen(col)) => {
                        return Err(Error::parse(1, *col, "unexpected token after letter"));
                    }
                }
            }
            GeneralizedWalk::from_letters(bq, letters)
        }
    }
}

/// String check for a walk of arrows: reduced (no immediate backtracking)
/// and every maximal same-direction run avoids the ideal in its reading
/// direction. Multi-arrow letters are expanded first.
pub fn is_string(sa: &StringAlgebra, walk: &GeneralizedWalk) -> bool {
    let expanded = walk.expand_arrows();
    let letters = expanded.letters();
    if letters.is_empty() {
        return true;
    }
    for pair in letters.windows(2) {
        if pair[0].path == pair[1].path && pair[0].direction != pair[1].direction {
            return false;
        }
    }
    let mut run_start = 0;
    for i in 1..=letters.len() {
        if i == letters.len() || letters[i].direction != letters[run_start].direction {
            let run = &letters[run_start..i];
            let arrows: Vec<ArrowId> = match run[0].direction {
                Direction::Direct => run.iter().map(|l| l.path.arrows()[0]).collect(),
                Direction::Inverse => run.iter().rev().map(|l| l.path.arrows()[0]).collect(),
            };
            if !sa.is_nonzero(&arrows) {
                return false;
            }
            run_start = i;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JunctionKind {
    DirectDirect,
    InverseInverse,
    Mixed,
}

#[derive(Debug, Clone)]
pub struct JunctionCheck {
    /// Junction between letters `index` and `index + 1` (0-based).
    pub index: usize,
    pub kind: JunctionKind,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct WalkCheck {
    pub is_generalized_string: bool,
    pub junctions: Vec<JunctionCheck>,
    /// Letters whose own path fails to be a nonzero path of the algebra.
    pub letter_problems: Vec<String>,
}

/// Junction-by-junction generalized-string check. Every letter must carry a
/// nonzero path; same-direction neighbors must compose to zero (in walk
/// order for direct, reversed for inverse); mixed junctions must expand to
/// a string.
pub fn check_generalized_string(sa: &StringAlgebra, walk: &GeneralizedWalk) -> WalkCheck {
    let letters = walk.letters();
    let mut junctions = Vec::new();
    let mut letter_problems = Vec::new();
    let mut ok = true;
    for (i, letter) in letters.iter().enumerate() {
        if letter.path.is_trivial() {
            letter_problems.push(format!("letter {i} is a trivial path"));
            ok = false;
        } else if !sa.is_nonzero(letter.path.arrows()) {
            letter_problems.push(format!(
                "letter {i} path {} contains a relation",
                sa.path_label(&letter.path)
            ));
            ok = false;
        }
    }
    for i in 0..letters.len().saturating_sub(1) {
        let (x, y) = (&letters[i], &letters[i + 1]);
        let check = match (x.direction, y.direction) {
            (Direction::Direct, Direction::Direct) => {
                let zero = sa.product_is_zero(&x.path, &y.path);
                JunctionCheck {
                    index: i,
                    kind: JunctionKind::DirectDirect,
                    ok: zero,
                    detail: if zero {
                        format!("{}{} = 0", sa.path_label(&x.path), sa.path_label(&y.path))
                    } else {
                        format!("{}{} != 0", sa.path_label(&x.path), sa.path_label(&y.path))
                    },
                }
            }
            (Direction::Inverse, Direction::Inverse) => {
                let zero = sa.product_is_zero(&y.path, &x.path);
                JunctionCheck {
                    index: i,
                    kind: JunctionKind::InverseInverse,
                    ok: zero,
                    detail: if zero {
                        format!("{}{} = 0", sa.path_label(&y.path), sa.path_label(&x.path))
                    } else {
                        format!("{}{} != 0", sa.path_label(&y.path), sa.path_label(&x.path))
                    },
                }
            }
            _ => {
                let pair = GeneralizedWalk::Letters(vec![x.clone(), y.clone()]);
                let stringy = is_string(sa, &pair);
                JunctionCheck {
                    index: i,
                    kind: JunctionKind::Mixed,
                    ok: stringy,
                    detail: if stringy {
                        "mixed junction forms a string".to_string()
                    } else {
                        "mixed junction fails the string condition".to_string()
                    },
                }
            }
        };
        ok &= check.ok;
        junctions.push(check);
    }
    WalkCheck {
        is_generalized_string: ok,
        junctions,
        letter_problems,
    }
}

pub fn is_generalized_string(sa: &StringAlgebra, walk: &GeneralizedWalk) -> bool {
    check_generalized_string(sa, walk).is_generalized_string
}

/// The letters of an algebra with their junction-valid successor table.
fn letter_graph(sa: &StringAlgebra) -> (Vec<Letter>, Vec<Vec<usize>>) {
    let letters: Vec<Letter> = {
        let mut v = Vec::new();
        for p in sa.nontrivial_paths() {
            v.push(Letter::direct(p.clone()));
            v.push(Letter::inverse(p.clone()));
        }
        v.sort();
        v
    };
    let successors: Vec<Vec<usize>> = letters
        .iter()
        .map(|x| {
            letters
                .iter()
                .enumerate()
                .filter(|(_, y)| x.target(sa) == y.source(sa) && junction_ok(sa, x, y))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    (letters, successors)
}

/// Number of junction-valid letter sequences with `1..=max_letters` letters,
/// before canonical filtering. A cheap size probe for enumeration callers.
pub fn count_generalized_walks(sa: &StringAlgebra, max_letters: usize) -> u64 {
    let (letters, successors) = letter_graph(sa);
    let mut counts: Vec<u64> = vec![1; letters.len()];
    let mut total: u64 = letters.len() as u64;
    for _ in 1..max_letters {
        let mut next = vec![0u64; letters.len()];
        for (i, &c) in counts.iter().enumerate() {
            for &j in &successors[i] {
                next[j] = next[j].saturating_add(c);
            }
        }
        total = total.saturating_add(next.iter().sum());
        counts = next;
    }
    total
}

/// All canonical generalized strings with at most `max_letters` letters,
/// trivial walks included, breadth-first by letter count. Walks may revisit
/// letters, so the cap is what bounds the search.
pub fn enumerate_generalized_strings(
    sa: &StringAlgebra,
    max_letters: usize,
) -> Vec<GeneralizedWalk> {
    let mut out: Vec<GeneralizedWalk> = sa
        .quiver()
        .vertices()
        .map(GeneralizedWalk::Trivial)
        .collect();
    let (letters, successors) = letter_graph(sa);
    let mut frontier: Vec<Vec<usize>> = (0..letters.len()).map(|i| vec![i]).collect();
    let mut count = 1;
    while count <= max_letters && !frontier.is_empty() {
        for seq in &frontier {
            let walk = GeneralizedWalk::Letters(seq.iter().map(|&i| letters[i].clone()).collect());
            if walk.is_canonical() {
                out.push(walk);
            }
        }
        let mut next = Vec::new();
        if count < max_letters {
            for seq in &frontier {
                for &j in &successors[*seq.last().unwrap()] {
                    let mut ext = seq.clone();
                    ext.push(j);
                    next.push(ext);
                }
            }
        }
        frontier = next;
        count += 1;
    }
    out.sort();
    out
}

fn junction_ok(sa: &StringAlgebra, x: &Letter, y: &Letter) -> bool {
    match (x.direction, y.direction) {
        (Direction::Direct, Direction::Direct) => sa.product_is_zero(&x.path, &y.path),
        (Direction::Inverse, Direction::Inverse) => sa.product_is_zero(&y.path, &x.path),
        _ => is_string(sa, &GeneralizedWalk::Letters(vec![x.clone(), y.clone()])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use crate::fixtures;

    fn algebra(text: &str) -> StringAlgebra {
        StringAlgebra::from_text(text).unwrap()
    }

    /// The two-parallel-pairs quiver with relations ad and cb from which the
    /// string examples are drawn.
    fn crossing() -> StringAlgebra {
        algebra(
            "vertices 1 2 3\narrow a 1 2\narrow c 1 2\narrow b 2 3\narrow d 2 3\nrel a d\nrel c b\n",
        )
    }

    #[test]
    fn parses_generalized_walk() {
        let sa = algebra(fixtures::PARALLEL);
        let w = parse_walk("a~ . c . d . (c b)~", &sa, WalkSyntax::Generalized).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.label(&sa), "a~ . c . d . (c b)~");
        let dirs: Vec<Direction> = w.letters().iter().map(|l| l.direction).collect();
        assert_eq!(
            dirs,
            vec![
                Direction::Inverse,
                Direction::Direct,
                Direction::Direct,
                Direction::Inverse
            ]
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        let sa = algebra(fixtures::PARALLEL);
        let spaced = parse_walk("a~ . c . d . (c b)~", &sa, WalkSyntax::Generalized).unwrap();
        let compact = parse_walk("a~.c.d.(c b)~", &sa, WalkSyntax::Generalized).unwrap();
        assert_eq!(spaced, compact);
    }

    #[test]
    fn parses_trivial_walk() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = parse_walk("e_1", &sa, WalkSyntax::Generalized).unwrap();
        assert!(w.is_trivial());
        assert_eq!(w.label(&sa), "e_1");
        assert_eq!(parse_walk("e_1~", &sa, WalkSyntax::Generalized).unwrap(), w);
    }

    #[test]
    fn parses_string_walk_mode() {
        let sa = crossing();
        let w = parse_walk("a b d~ c~", &sa, WalkSyntax::StringWalk).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.letters().iter().all(|l| l.path.len() == 1));
    }

    #[test]
    fn generalized_mode_requires_dots() {
        let sa = algebra(fixtures::TRIANGLE);
        let err = parse_walk("b c", &sa, WalkSyntax::Generalized).unwrap_err();
        assert!(err.to_string().contains("(a b)"), "{err}");
        assert!(parse_walk("(b c)", &sa, WalkSyntax::Generalized).is_ok());
        assert!(parse_walk("a .", &sa, WalkSyntax::Generalized).is_err());
        assert!(parse_walk(". a", &sa, WalkSyntax::Generalized).is_err());
    }

    #[test]
    fn letter_with_internal_relation_is_rejected() {
        let sa = algebra(fixtures::TRIANGLE);
        let err = parse_walk("(c a)", &sa, WalkSyntax::Generalized).unwrap_err();
        assert!(err.to_string().contains("relation"), "{err}");
    }

    #[test]
    fn disconnected_letters_are_rejected() {
        let sa = algebra(fixtures::TRIANGLE);
        assert!(parse_walk("a . a", &sa, WalkSyntax::Generalized).is_err());
    }

    #[test]
    fn invert_is_an_involution_and_reverses() {
        let sa = algebra(fixtures::PARALLEL);
        let w = parse_walk("a~ . c . d . (c b)~", &sa, WalkSyntax::Generalized).unwrap();
        let inv = w.invert();
        assert_eq!(inv.label(&sa), "(c b) . d~ . c~ . a");
        assert_eq!(inv.invert(), w);
    }

    #[test]
    fn degree_profile_of_the_four_letter_walk() {
        let sa = algebra(fixtures::PARALLEL);
        let w = parse_walk("a~ . c . d . (c b)~", &sa, WalkSyntax::Generalized).unwrap();
        let mu = w.degree_profile();
        assert_eq!(mu.values, vec![0, -1, 0, 1, 0]);
        assert_eq!(mu.min(), -1);
    }

    #[test]
    fn degree_profile_of_single_direct_letter() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = parse_walk("(b c)", &sa, WalkSyntax::Generalized).unwrap();
        let mu = w.degree_profile();
        assert_eq!(mu.values, vec![0, 1]);
        assert_eq!(mu.min(), 0);
        assert!(mu.diverges_from_positive_convention());
    }

    #[test]
    fn degree_profile_fivevertex_interior() {
        let sa = algebra(fixtures::FIVEVERTEX);
        let w = parse_walk("a . b~ . c", &sa, WalkSyntax::Generalized).unwrap();
        let mu = w.degree_profile();
        assert_eq!(mu.values, vec![0, 1, 0, 1]);
        assert_eq!(mu.min(), 0);
    }

    #[test]
    fn canonicalize_prefers_nonnegative_end() {
        let sa = crossing();
        let w = parse_walk("b~ . a~", &sa, WalkSyntax::Generalized).unwrap();
        assert_eq!(w.canonicalize().label(&sa), "a . b");
        let ab = parse_walk("a . b", &sa, WalkSyntax::Generalized).unwrap();
        assert_eq!(ab.canonicalize(), ab);
        assert_eq!(w.canonicalize(), w.invert().canonicalize());
    }

    #[test]
    fn string_examples() {
        let sa = crossing();
        let good = parse_walk("a b d~ c~", &sa, WalkSyntax::StringWalk).unwrap();
        assert!(is_string(&sa, &good));
        let backtrack = parse_walk("a b b~ c~", &sa, WalkSyntax::StringWalk).unwrap();
        assert!(!is_string(&sa, &backtrack));
        let relation_hit = parse_walk("a b d~ c~ a d", &sa, WalkSyntax::StringWalk).unwrap();
        assert!(!is_string(&sa, &relation_hit));
    }

    #[test]
    fn generalized_string_examples() {
        let parallel = algebra(fixtures::PARALLEL);
        let w = parse_walk("a~ . c . d . (c b)~", &parallel, WalkSyntax::Generalized).unwrap();
        assert!(is_generalized_string(&parallel, &w));

        let triangle = algebra(fixtures::TRIANGLE);
        let bc = parse_walk("(b c)", &triangle, WalkSyntax::Generalized).unwrap();
        assert!(is_generalized_string(&triangle, &bc));

        let b_then_c = parse_walk("b . c", &triangle, WalkSyntax::Generalized).unwrap();
        let check = check_generalized_string(&triangle, &b_then_c);
        assert!(!check.is_generalized_string);
        assert_eq!(check.junctions.len(), 1);
        assert_eq!(check.junctions[0].kind, JunctionKind::DirectDirect);
    }

    #[test]
    fn generalized_string_invariant_under_invert() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in enumerate_generalized_strings(&sa, 3) {
                assert!(is_generalized_string(&sa, &w.invert()), "{}", w.label(&sa));
            }
        }
    }

    #[test]
    fn triangle_two_letter_strings_match_brute_force() {
        let sa = algebra(fixtures::TRIANGLE);
        let enumerated: BTreeSet<GeneralizedWalk> = enumerate_generalized_strings(&sa, 2)
            .into_iter()
            .collect();
        // Brute force: all connected letter pairs filtered by the junction
        // rules, canonicalized.
        let mut brute: BTreeSet<GeneralizedWalk> =
            sa.quiver().vertices().map(GeneralizedWalk::Trivial).collect();
        let mut letters = Vec::new();
        for p in sa.nontrivial_paths() {
            letters.push(Letter::direct(p.clone()));
            letters.push(Letter::inverse(p.clone()));
        }
        for x in &letters {
            let w = GeneralizedWalk::Letters(vec![x.clone()]);
            if w.is_canonical() {
                brute.insert(w);
            }
            for y in &letters {
                if x.target(&sa) != y.source(&sa) {
                    continue;
                }
                let w = GeneralizedWalk::Letters(vec![x.clone(), y.clone()]);
                if is_generalized_string(&sa, &w) && w.is_canonical() {
                    brute.insert(w);
                }
            }
        }
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn rotation_of_closed_walks() {
        let sa = algebra(fixtures::TRIANGLE);
        // c . a . b is closed at vertex 3; junction rules are not needed for
        // rotation itself.
        let w = parse_walk("c . a . b", &sa, WalkSyntax::Generalized).unwrap();
        assert!(w.is_closed(&sa));
        let r = w.rotate(&sa, 1).unwrap();
        assert_eq!(r.label(&sa), "a . b . c");
        let back = r.rotate(&sa, w.len() - 1).unwrap();
        assert_eq!(back, w);
        assert!(r.is_closed(&sa));
        let open = parse_walk("c . a", &sa, WalkSyntax::Generalized).unwrap();
        assert!(open.rotate(&sa, 1).is_err());
        assert!(w.rotate(&sa, 0).is_err());
        assert!(w.rotate(&sa, 3).is_err());
    }

    #[test]
    fn profile_inversion_identity() {
        let sa = algebra(fixtures::PARALLEL);
        for w in enumerate_generalized_strings(&sa, 3) {
            let mu = w.degree_profile();
            let nu = w.invert().degree_profile();
            let n = w.len();
            for i in 0..=n {
                assert_eq!(nu.values[i], mu.values[n - i] - mu.values[n]);
            }
        }
    }

    #[test]
    fn walk_label_round_trip() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in enumerate_generalized_strings(&sa, 3) {
                let label = w.label(&sa);
                let reparsed = parse_walk(&label, &sa, WalkSyntax::Generalized).unwrap();
                assert_eq!(reparsed, w, "{label}");
            }
        }
    }
}
