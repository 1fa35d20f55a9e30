//! Permutations and admissible step maps on `P_n = {1, ..., n}`.
//!
//! Everything here is 1-based: `p.image(i)` is the image of the point `i`,
//! and image lists hold values in `1..=n`. Conversion to 0-based indices
//! happens only when touching the backing vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything that maps `{1..n}` into itself pointwise.
pub trait PointMap {
    fn degree(&self) -> usize;
    /// Image of the 1-based point `i`.
    fn image(&self, i: usize) -> usize;
}

/// A bijection of `{1..n}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { value: v, degree: n });
            }
            if seen[v] {
                return Err(Error::Duplicate(v));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// Builds a permutation of degree `degree` from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree + 1];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::OutOfRange { value: p, degree });
                }
                if used[p] {
                    return Err(Error::Duplicate(p));
                }
                used[p] = true;
            }
            for (idx, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// The single cycle `points[0] -> points[1] -> ... -> points[0]` on `P_degree`.
    pub fn from_cycle(points: &[usize], degree: usize) -> Result<Self> {
        Self::from_cycles(&[points.to_vec()], degree)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ inner`, i.e. `i ↦ self(inner(i))`.
    pub fn after(&self, inner: &Permutation) -> Result<Self> {
        check_degrees(self.degree(), inner.degree())?;
        Ok(Self {
            images: inner.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    /// The mirror image `θ*(i) = n + 1 - θ(n + 1 - i)`.
    pub fn dual(&self) -> Self {
        let n = self.images.len();
        Self {
            images: (1..=n).map(|i| n + 1 - self.images[n - i]).collect(),
        }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start - 1];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p - 1];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// True iff the permutation is a single n-cycle.
    pub fn is_cyclic(&self) -> bool {
        let n = self.images.len();
        let mut p = 1;
        for step in 1..=n {
            p = self.images[p - 1];
            if p == 1 {
                return step == n;
            }
        }
        false
    }

    /// Cycle notation. `compact` drops separators inside a cycle (`(1342)`)
    /// and is only honoured when every point is a single digit.
    pub fn cycle_string(&self, compact: bool) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let sep = if compact && self.degree() < 10 { "" } else { " " };
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", body.join(sep))
            })
            .collect()
    }

    /// Every permutation of degree `n` in lexicographic image-list order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        lex_permutations((1..=n).collect()).map(|images| Permutation { images })
    }
}

impl PointMap for Permutation {
    fn degree(&self) -> usize {
        self.images.len()
    }
    fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_image_list(f, &self.images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

/// A map `{1..n} -> {1..n}` that never takes the same value at two
/// consecutive points. Not necessarily a bijection.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct StepMap {
    images: Vec<usize>,
}

impl StepMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        if let Some(&v) = images.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::OutOfRange { value: v, degree: n });
        }
        if let Some(i) = images.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::ConsecutiveEqual { position: i + 1, value: images[i] });
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The underlying permutation, if the map happens to be bijective.
    pub fn to_permutation(&self) -> Option<Permutation> {
        Permutation::new(self.images.clone()).ok()
    }
}

impl PointMap for StepMap {
    fn degree(&self) -> usize {
        self.images.len()
    }
    fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }
}

impl From<&Permutation> for StepMap {
    fn from(p: &Permutation) -> Self {
        Self { images: p.images.clone() }
    }
}

impl TryFrom<Vec<usize>> for StepMap {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<StepMap> for Vec<usize> {
    fn from(p: StepMap) -> Self {
        p.images
    }
}

impl fmt::Display for StepMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_image_list(f, &self.images)
    }
}

impl fmt::Debug for StepMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepMap[{self}]")
    }
}

/// A bijection of the contiguous range `{start, ..., start + len - 1}`,
/// stored as absolute images.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RangePermutation {
    start: usize,
    images: Vec<usize>,
}

impl RangePermutation {
    pub fn new(start: usize, images: Vec<usize>) -> Result<Self> {
        if start == 0 {
            return Err(Error::OutOfRange { value: 0, degree: images.len() });
        }
        let len = images.len();
        let mut seen = vec![false; len];
        for &v in &images {
            if v < start || v >= start + len {
                return Err(Error::Precondition(format!(
                    "value {v} outside {start}..={}",
                    start + len - 1
                )));
            }
            if seen[v - start] {
                return Err(Error::Duplicate(v));
            }
            seen[v - start] = true;
        }
        Ok(Self { start, images })
    }

    pub fn identity(start: usize, len: usize) -> Self {
        Self { start, images: (start..start + len).collect() }
    }

    /// Reads `a -> b -> ... -> a` as a single cycle on `{start..=end}`.
    pub fn from_cycle(points: &[usize], start: usize, end: usize) -> Result<Self> {
        let shifted: Vec<usize> = points
            .iter()
            .map(|&p| {
                if p < start || p > end {
                    Err(Error::Precondition(format!("point {p} outside {start}..={end}")))
                } else {
                    Ok(p + 1 - start)
                }
            })
            .collect::<Result<_>>()?;
        let local = Permutation::from_cycle(&shifted, end + 1 - start)?;
        Self::new(start, local.images.iter().map(|&v| v + start - 1).collect())
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Last point of the range.
    pub fn end(&self) -> usize {
        self.start + self.images.len() - 1
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the absolute point `x` in `start..=end`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x - self.start]
    }
}

/// `outer ∘ inner` as a step map. Fails with [`Error::ConsecutiveEqual`] when
/// the composite takes the same value at two neighbouring points.
pub fn compose<A: PointMap, B: PointMap>(outer: &A, inner: &B) -> Result<StepMap> {
    check_degrees(outer.degree(), inner.degree())?;
    let images = (1..=inner.degree()).map(|i| outer.image(inner.image(i))).collect();
    StepMap::new(images)
}

/// Parses an image list (`"3 1 4 5 2"`), cycle notation (`"(1 3 4)(2 5)"`,
/// `"(134)"`, `"(3 4 5)@5"`), or an arrow chain (`"1 -> 3 -> 2 -> 1"`).
///
/// Cycle notation and arrow chains take the largest mentioned point as the
/// degree unless an `@n` suffix says otherwise. `"()@n"` and `"id@n"` denote
/// the identity.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let err = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err("empty input"));
    }
    let (body, degree) = match trimmed.rsplit_once('@') {
        Some((body, n)) => {
            let n: usize = n.trim().parse().map_err(|_| err("degree after '@' is not a number"))?;
            (body.trim(), Some(n))
        }
        None => (trimmed, None),
    };

    let is_arrow = body.contains("->") || body.contains('→');
    if body.contains('(') || body == "id" || body == "e" {
        let cycles = if body == "id" || body == "e" { Vec::new() } else { parse_cycles(body).map_err(|r| err(&r))? };
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = resolve_degree(max, degree).map_err(|r| err(&r))?;
        Permutation::from_cycles(&cycles, n)
    } else if is_arrow {
        let points = body
            .split(|c: char| c == '→' || c == '-' || c == '>' || c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err("non-numeric point in arrow chain")))
            .collect::<Result<Vec<_>>>()?;
        let mut points = points;
        if points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        let max = points.iter().copied().max().unwrap_or(0);
        let n = resolve_degree(max, degree).map_err(|r| err(&r))?;
        Permutation::from_cycle(&points, n)
    } else {
        let images = body
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err("non-numeric image")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = degree {
            if n != images.len() {
                return Err(err("'@n' disagrees with the length of the image list"));
            }
        }
        Permutation::new(images)
    }
}

fn resolve_degree(max: usize, explicit: Option<usize>) -> std::result::Result<usize, String> {
    match explicit {
        Some(n) if n < max => Err(format!("degree {n} is smaller than mentioned point {max}")),
        Some(0) => Err("degree must be positive".into()),
        Some(n) => Ok(n),
        None if max == 0 => Err("identity needs an explicit degree, e.g. \"()@3\"".into()),
        None => Ok(max),
    }
}

fn parse_cycles(body: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or("expected '('")?;
        let close = open.find(')').ok_or("unclosed cycle")?;
        let inner = open[..close].trim();
        if inner.contains('(') {
            return Err("nested '('".into());
        }
        let tokens: Vec<&str> = inner.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        let points: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 {
            // compact form such as (1342): one digit per point
            tokens[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| format!("bad point {c:?}")))
                .collect::<std::result::Result<_, _>>()?
        } else {
            tokens
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| format!("bad point {t:?}")))
                .collect::<std::result::Result<_, _>>()?
        };
        if points.contains(&0) {
            return Err("points start at 1".into());
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub(crate) fn check_degrees(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DegreeMismatch { left, right });
    }
    Ok(())
}

fn write_image_list(f: &mut fmt::Formatter<'_>, images: &[usize]) -> fmt::Result {
    for (i, v) in images.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Lexicographic permutations of `values` (which need not start at 1).
pub fn lex_permutations(mut values: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    values.sort_unstable();
    let mut next = Some(values);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(current)
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
