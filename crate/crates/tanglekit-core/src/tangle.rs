//! Oriented tangle diagrams sliced into cup, cap, and braid symbols.
//!
//! A tangle is a vertical stack of *elements*, listed bottom to top.
//! Every element is one horizontal slice of the diagram:
//!
//! * a **cup** (local minimum) creates two adjacent strand ends,
//! * a **cap** (local maximum) joins two adjacent strand ends,
//! * a **braid** block crosses strands without creating or destroying
//!   them.
//!
//! Each slice carries the orientations of the strands crossing its
//! bottom and top boundary, and [`Tangle::new`] checks that adjacent
//! slices agree, so a well-formed value always describes a consistent
//! oriented diagram.  Closed diagrams (empty bottom and top boundary)
//! are links; connectivity is computed by union–find over the strand
//! segments.
//!
//! The textual syntax mirrors the constructors:
//!
//! ```text
//! C[0,0; <] ; C[2,0; du>] ; B[s2^3; duud] ; A[2,0; du>] ; A[0,0; <]
//! ```
//!
//! `C[k,l; …]` is a cup with `k` pass-through strands on the left and
//! `l` on the right, `A[k,l; …]` the matching cap, and `B[word; dirs]`
//! a braid block.  Orientations are written `u`/`d` per strand; the arc
//! of a cup or cap is written `>` (clockwise) or `<` (counterclockwise)
//! in place of the two strand ends it turns around.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::braid::BraidWord;
use crate::error::{Error, Result};


/// Orientation of one strand where it crosses a horizontal level:
/// pointing up or pointing down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Dir {
    /// Strand oriented upwards (`u`).
    Up,
    /// Strand oriented downwards (`d`).
    Down,
}

impl Dir {
    /// The opposite orientation.
    pub fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    /// One-letter token used in the textual syntax.
    pub fn token(self) -> char {
        match self {
            Dir::Up => 'u',
            Dir::Down => 'd',
        }
    }

    /// Inverse of [`Dir::token`].
    pub fn from_token(c: char) -> Option<Self> {
        match c {
            'u' => Some(Dir::Up),
            'd' => Some(Dir::Down),
            _ => None,
        }
    }
}

impl core::fmt::Display for Dir {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(out, "{}", self.token())
    }
}

/// Parses a compact orientation string such as `"duud"`; whitespace is
/// ignored, every other character is rejected.
pub fn parse_dirs(text: &str) -> Result<Vec<Dir>> {
    let mut dirs = Vec::new();
    for (offset, c) in text.char_indices() {
        if c.is_whitespace() {
            continue;
        }
        match Dir::from_token(c) {
            Some(d) => dirs.push(d),
            None => {
                return Err(Error::Parse {
                    offset,
                    message: format!("expected orientation `u` or `d`, got `{c}`"),
                })
            }
        }
    }
    Ok(dirs)
}

/// Formats a slice of orientations as a compact token (`""` for empty).
pub fn dirs_token(dirs: &[Dir]) -> String {
    dirs.iter().map(|d| d.token()).collect()
}

/// Rotational sense of the turning arc of a cup or cap.
///
/// The arc determines the orientations of the two strand ends it turns
/// around, read left to right at the wide boundary of the slice:
/// clockwise gives `[Up, Down]`, counterclockwise gives `[Down, Up]`.
/// The same rule applies to cups and caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ArcOrient {
    /// Clockwise (`>`): strand ends read `[Up, Down]`.
    Cw,
    /// Counterclockwise (`<`): strand ends read `[Down, Up]`.
    Ccw,
}

impl ArcOrient {
    /// Orientations of the two strand ends of the arc, left to right.
    pub fn expansion(self) -> [Dir; 2] {
        match self {
            ArcOrient::Cw => [Dir::Up, Dir::Down],
            ArcOrient::Ccw => [Dir::Down, Dir::Up],
        }
    }

    /// The opposite rotational sense.
    pub fn flip(self) -> Self {
        match self {
            ArcOrient::Cw => ArcOrient::Ccw,
            ArcOrient::Ccw => ArcOrient::Cw,
        }
    }

    /// One-letter token used in the textual syntax.
    pub fn token(self) -> char {
        match self {
            ArcOrient::Cw => '>',
            ArcOrient::Ccw => '<',
        }
    }

    /// Inverse of [`ArcOrient::token`].
    pub fn from_token(c: char) -> Option<Self> {
        match c {
            '>' => Some(ArcOrient::Cw),
            '<' => Some(ArcOrient::Ccw),
            _ => None,
        }
    }
}

impl core::fmt::Display for ArcOrient {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(out, "{}", self.token())
    }
}

/// One horizontal slice of a tangle diagram.
///
/// Fields are public for ergonomic pattern matching; [`Tangle::new`]
/// validates every element it is given, so invalid braid blocks (label
/// count differing from the strand count) never enter a [`Tangle`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Element {
    /// Local minimum: two new strand ends appear between `left.len()`
    /// and `right.len()` pass-through strands.
    ///
    /// Bottom boundary `left ++ right`, top boundary
    /// `left ++ arc.expansion() ++ right`.
    Cup { left: Vec<Dir>, arc: ArcOrient, right: Vec<Dir> },
    /// Local maximum: two adjacent strand ends are joined.
    ///
    /// Bottom boundary `left ++ arc.expansion() ++ right`, top boundary
    /// `left ++ right`.
    Cap { left: Vec<Dir>, arc: ArcOrient, right: Vec<Dir> },
    /// A braid block; `eps` labels the bottom boundary strand by
    /// strand and must have exactly `word.strands()` entries.
    Braid { word: BraidWord, eps: Vec<Dir> },
}

impl Element {
    /// Cup (local minimum) with the given pass-through strands.
    pub fn cup(left: Vec<Dir>, arc: ArcOrient, right: Vec<Dir>) -> Self {
        Element::Cup { left, arc, right }
    }

    /// Cap (local maximum) with the given pass-through strands.
    pub fn cap(left: Vec<Dir>, arc: ArcOrient, right: Vec<Dir>) -> Self {
        Element::Cap { left, arc, right }
    }

    /// Braid block; fails unless `eps` has one label per strand.
    pub fn braid(word: BraidWord, eps: Vec<Dir>) -> Result<Self> {
        let e = Element::Braid { word, eps };
        e.validate()?;
        Ok(e)
    }

    /// Identity braid block on the given nonempty boundary.
    pub fn trivial(eps: Vec<Dir>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::invalid("identity block needs at least one strand"));
        }
        let n = eps.len();
        Element::braid(BraidWord::identity(n), eps)
    }

    /// Checks the element's internal invariant.
    pub fn validate(&self) -> Result<()> {
        match self {
            Element::Cup { .. } | Element::Cap { .. } => Ok(()),
            Element::Braid { word, eps } => {
                if word.strands() == eps.len() {
                    Ok(())
                } else {
                    Err(Error::invalid(format_args!(
                        "braid block on {} strands carries {} orientation labels",
                        word.strands(),
                        eps.len()
                    )))
                }
            }
        }
    }

    /// Number of strands crossing the bottom boundary.
    pub fn source_width(&self) -> usize {
        match self {
            Element::Cup { left, right, .. } => left.len() + right.len(),
            Element::Cap { left, right, .. } => left.len() + right.len() + 2,
            Element::Braid { word, .. } => word.strands(),
        }
    }

    /// Number of strands crossing the top boundary.
    pub fn target_width(&self) -> usize {
        match self {
            Element::Cup { left, right, .. } => left.len() + right.len() + 2,
            Element::Cap { left, right, .. } => left.len() + right.len(),
            Element::Braid { word, .. } => word.strands(),
        }
    }

    /// Orientations along the bottom boundary, left to right.
    pub fn source(&self) -> Vec<Dir> {
        match self {
            Element::Cup { left, right, .. } => chain(left, &[], right),
            Element::Cap { left, arc, right } => chain(left, &arc.expansion(), right),
            Element::Braid { eps, .. } => eps.clone(),
        }
    }

    /// Orientations along the top boundary, left to right.
    ///
    /// For a braid block the strand entering bottom position `i` exits
    /// at top position `perm(i)` carrying its orientation.
    pub fn target(&self) -> Vec<Dir> {
        match self {
            Element::Cup { left, arc, right } => chain(left, &arc.expansion(), right),
            Element::Cap { left, right, .. } => chain(left, &[], right),
            Element::Braid { word, eps } => {
                let inv = word.perm().inverse();
                (1..=eps.len()).map(|j| eps[inv.apply(j) - 1]).collect()
            }
        }
    }

    /// Textual form, e.g. `C[2,0; du>]` or `B[s2^3; duud]`.
    fn write(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Element::Cup { left, arc, right } => {
                write!(out, "C[{},{}; {}{}{}]", left.len(), right.len(), dirs_token(left), arc, dirs_token(right))
            }
            Element::Cap { left, arc, right } => {
                write!(out, "A[{},{}; {}{}{}]", left.len(), right.len(), dirs_token(left), arc, dirs_token(right))
            }
            Element::Braid { word, eps } => {
                write!(out, "B[{}; {}]", word, dirs_token(eps))
            }
        }
    }
}

impl core::fmt::Display for Element {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.write(out)
    }
}

fn chain(left: &[Dir], middle: &[Dir], right: &[Dir]) -> Vec<Dir> {
    let mut v = Vec::with_capacity(left.len() + middle.len() + right.len());
    v.extend_from_slice(left);
    v.extend_from_slice(middle);
    v.extend_from_slice(right);
    v
}

/// An oriented tangle diagram: a consistent stack of [`Element`]s, listed
/// bottom to top.  The empty stack is the identity on the empty boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(try_from = "Vec<Element>", into = "Vec<Element>")
)]
pub struct Tangle {
    pub(crate) elements: Vec<Element>,
}

impl Tangle {
    /// Builds a tangle, checking every element and every junction.
    ///
    /// Junction `i` sits between element `i-1` and element `i`; the top
    /// boundary of the lower element must equal the bottom boundary of
    /// the upper one, orientation included.
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        for e in &elements {
            e.validate()?;
        }
        for i in 1..elements.len() {
            let below = elements[i - 1].target();
            let above = elements[i].source();
            if below != above {
                return Err(Error::Inconsistent {
                    position: i,
                    below_target: format!("[{}]", dirs_token(&below)),
                    above_source: format!("[{}]", dirs_token(&above)),
                });
            }
        }
        Ok(Tangle { elements })
    }

    /// The identity tangle on the given boundary (empty stack for the
    /// empty boundary, a single trivial braid block otherwise).
    pub fn identity(dirs: &[Dir]) -> Self {
        if dirs.is_empty() {
            Tangle { elements: Vec::new() }
        } else {
            Tangle {
                elements: vec![Element::trivial(dirs.to_vec()).expect("nonempty boundary")],
            }
        }
    }

    /// The round circle: one counter-clockwise cup closed by one
    /// counter-clockwise cap. A closed one-component diagram with no
    /// crossings.
    pub fn circle() -> Self {
        Tangle {
            elements: vec![
                Element::cup(Vec::new(), ArcOrient::Ccw, Vec::new()),
                Element::cap(Vec::new(), ArcOrient::Ccw, Vec::new()),
            ],
        }
    }

    /// The elements, bottom to top.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Consumes the tangle and returns its elements.
    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }

    /// Orientations along the bottom boundary (empty for a closed
    /// diagram or the empty tangle).
    pub fn source(&self) -> Vec<Dir> {
        self.elements.first().map(Element::source).unwrap_or_default()
    }

    /// Orientations along the top boundary.
    pub fn target(&self) -> Vec<Dir> {
        self.elements.last().map(Element::target).unwrap_or_default()
    }

    /// Stacks `upper` on top of `self`; fails if the boundaries do not
    /// meet.
    pub fn stack(&self, upper: &Tangle) -> Result<Tangle> {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&upper.elements);
        Tangle::new(elements)
    }

    /// Tensors identity strands onto both sides: `left ⊗ self ⊗ right`.
    ///
    /// The padded strands run vertically through every slice.  Fails on
    /// the empty tangle when padding is requested, since the result
    /// would need an explicit slice to carry its boundary.
    pub fn pad(&self, left: &[Dir], right: &[Dir]) -> Result<Tangle> {
        if left.is_empty() && right.is_empty() {
            return Ok(self.clone());
        }
        if self.elements.is_empty() {
            return Err(Error::invalid(
                "cannot pad the empty tangle; use Tangle::identity for bare strands",
            ));
        }
        let elements = self
            .elements
            .iter()
            .map(|e| match e {
                Element::Cup { left: l, arc, right: r } => Element::Cup {
                    left: chain(left, &[], l),
                    arc: *arc,
                    right: chain(r, &[], right),
                },
                Element::Cap { left: l, arc, right: r } => Element::Cap {
                    left: chain(left, &[], l),
                    arc: *arc,
                    right: chain(r, &[], right),
                },
                Element::Braid { word, eps } => Element::Braid {
                    word: BraidWord::tensor(left.len(), word, right.len()),
                    eps: chain(left, eps, right),
                },
            })
            .collect();
        Ok(Tangle { elements })
    }

    /// Total crossing count, i.e. the number of expanded braid letters;
    /// `None` if an exponent run is too large to expand.
    pub fn crossing_count(&self) -> Option<usize> {
        let mut total = 0usize;
        for e in &self.elements {
            if let Element::Braid { word, .. } = e {
                total = total.checked_add(word.letter_count()?)?;
            }
        }
        Some(total)
    }

    /// Number of connected components of the underlying 1-manifold
    /// (circles and boundary-to-boundary arcs both count).
    pub fn components(&self) -> usize {
        let n = self.elements.len();
        if n == 0 {
            return 0;
        }
        let mut offset = Vec::with_capacity(n + 2);
        offset.push(0usize);
        let mut total = self.elements[0].source_width();
        offset.push(total);
        for e in &self.elements {
            total += e.target_width();
            offset.push(total);
        }
        let mut dsu = Dsu::new(total);
        for (idx, e) in self.elements.iter().enumerate() {
            let below = offset[idx];
            let above = offset[idx + 1];
            match e {
                Element::Braid { word, .. } => {
                    let p = word.perm();
                    for i in 1..=word.strands() {
                        dsu.union(below + i - 1, above + p.apply(i) - 1);
                    }
                }
                Element::Cap { left, right, .. } => {
                    let k = left.len();
                    dsu.union(below + k, below + k + 1);
                    for i in 0..k {
                        dsu.union(below + i, above + i);
                    }
                    for j in 0..right.len() {
                        dsu.union(below + k + 2 + j, above + k + j);
                    }
                }
                Element::Cup { left, right, .. } => {
                    let k = left.len();
                    dsu.union(above + k, above + k + 1);
                    for i in 0..k {
                        dsu.union(below + i, above + i);
                    }
                    for j in 0..right.len() {
                        dsu.union(below + k + j, above + k + 2 + j);
                    }
                }
            }
        }
        dsu.roots()
    }

    /// Whether the diagram is closed (no boundary strands).
    pub fn is_link(&self) -> bool {
        self.source().is_empty() && self.target().is_empty()
    }

    /// Whether the diagram is a closed one-component curve.
    pub fn is_knot(&self) -> bool {
        self.is_link() && self.components() == 1
    }

    /// Parses the textual syntax (see the module docs); the empty or
    /// all-whitespace string is the empty tangle.
    pub fn parse(text: &str) -> Result<Self> {
        parse_tangle(text)
    }
}

impl TryFrom<Vec<Element>> for Tangle {
    type Error = Error;

    fn try_from(elements: Vec<Element>) -> Result<Self> {
        Tangle::new(elements)
    }
}

impl From<Tangle> for Vec<Element> {
    fn from(t: Tangle) -> Self {
        t.elements
    }
}

impl core::fmt::Display for Tangle {
    fn fmt(&self, out: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(out, " ; ")?;
            }
            e.write(out)?;
        }
        Ok(())
    }
}

impl core::str::FromStr for Tangle {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Tangle::parse(text)
    }
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

fn parse_tangle(text: &str) -> Result<Tangle> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut elements = Vec::new();
    skip_ws(bytes, &mut pos);
    while pos < bytes.len() {
        elements.push(parse_element(text, &mut pos)?);
        skip_ws(bytes, &mut pos);
        if pos < bytes.len() {
            if bytes[pos] == b';' {
                pos += 1;
                skip_ws(bytes, &mut pos);
                if pos >= bytes.len() {
                    return Err(Error::Parse {
                        offset: pos,
                        message: "trailing `;` with no element after it".to_string(),
                    });
                }
            } else {
                return Err(Error::Parse {
                    offset: pos,
                    message: format!(
                        "expected `;` between elements, got `{}`",
                        &text[pos..].chars().next().unwrap_or(' ')
                    ),
                });
            }
        }
    }
    Tangle::new(elements)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_element(text: &str, pos: &mut usize) -> Result<Element> {
    let bytes = text.as_bytes();
    let kind_at = *pos;
    let kind = bytes[kind_at];
    if !matches!(kind, b'C' | b'A' | b'B') {
        return Err(Error::Parse {
            offset: kind_at,
            message: format!(
                "expected element kind `C`, `A`, or `B`, got `{}`",
                text[kind_at..].chars().next().unwrap_or(' ')
            ),
        });
    }
    *pos += 1;
    skip_ws(bytes, pos);
    if *pos >= bytes.len() || bytes[*pos] != b'[' {
        return Err(Error::Parse { offset: *pos, message: "expected `[`".to_string() });
    }
    *pos += 1;
    let body_start = *pos;
    let body_end = match text[body_start..].find(']') {
        Some(rel) => body_start + rel,
        None => {
            return Err(Error::Parse { offset: kind_at, message: "unclosed `[`".to_string() })
        }
    };
    let body = &text[body_start..body_end];
    *pos = body_end + 1;
    match kind {
        b'B' => parse_braid_body(body, body_start),
        _ => parse_turn_body(kind == b'C', body, body_start),
    }
}

fn parse_braid_body(body: &str, base: usize) -> Result<Element> {
    let (word_text, dirs_text) = body.rsplit_once(';').ok_or_else(|| Error::Parse {
        offset: base,
        message: "braid block needs `B[word; dirs]`".to_string(),
    })?;
    let dirs = parse_dirs(dirs_text).map_err(|e| shift_parse(e, base + word_text.len() + 1))?;
    if dirs.is_empty() {
        return Err(Error::Parse {
            offset: base + word_text.len() + 1,
            message: "braid block needs at least one strand".to_string(),
        });
    }
    let word =
        BraidWord::parse(word_text, Some(dirs.len())).map_err(|e| shift_parse(e, base))?;
    Element::braid(word, dirs)
}

fn parse_turn_body(is_cup: bool, body: &str, base: usize) -> Result<Element> {
    let (counts, dirs_part) = body.split_once(';').ok_or_else(|| Error::Parse {
        offset: base,
        message: "cup/cap needs `[k,l; dirs]`".to_string(),
    })?;
    let (k_text, l_text) = counts.split_once(',').ok_or_else(|| Error::Parse {
        offset: base,
        message: "cup/cap needs two counts `k,l`".to_string(),
    })?;
    let k: usize = k_text.trim().parse().map_err(|_| Error::Parse {
        offset: base,
        message: format!("invalid count `{}`", k_text.trim()),
    })?;
    let l: usize = l_text.trim().parse().map_err(|_| Error::Parse {
        offset: base + counts.len(),
        message: format!("invalid count `{}`", l_text.trim()),
    })?;
    let dirs_base = base + counts.len() + 1;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut arc: Option<ArcOrient> = None;
    for (rel, c) in dirs_part.char_indices() {
        if c.is_whitespace() {
            continue;
        }
        if let Some(a) = ArcOrient::from_token(c) {
            if arc.is_some() {
                return Err(Error::Parse {
                    offset: dirs_base + rel,
                    message: "more than one arc symbol".to_string(),
                });
            }
            arc = Some(a);
        } else if let Some(d) = Dir::from_token(c) {
            if arc.is_none() {
                left.push(d);
            } else {
                right.push(d);
            }
        } else {
            return Err(Error::Parse {
                offset: dirs_base + rel,
                message: format!("expected `u`, `d`, `<`, or `>`, got `{c}`"),
            });
        }
    }
    let arc = arc.ok_or_else(|| Error::Parse {
        offset: dirs_base,
        message: "cup/cap needs an arc symbol `<` or `>`".to_string(),
    })?;
    if left.len() != k || right.len() != l {
        return Err(Error::Parse {
            offset: base,
            message: format!(
                "counts ({k},{l}) do not match orientation lists ({},{})",
                left.len(),
                right.len()
            ),
        });
    }
    Ok(if is_cup {
        Element::Cup { left, arc, right }
    } else {
        Element::Cap { left, arc, right }
    })
}

fn shift_parse(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse { offset: offset + base, message },
        other => other,
    }
}

// ---------------------------------------------------------------------
// Union–find over strand segments
// ---------------------------------------------------------------------

/// Union–find with path halving and union by size; cloneable so state
/// sums can branch cheaply.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns `false` if they were
    /// already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Number of distinct classes.
    pub(crate) fn roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
