//! Partitions, Yamanouchi words, labeled diagrams and Dyck ribbons.
//!
//! Conventions used throughout the crate:
//!
//! - Boxes carry matrix coordinates `(row i, column j)`, 1-based from the
//!   top left (English convention); rotated 45-degree diagram pictures
//!   are normalised to this frame.
//! - The staircase of size `n` is the partition `(n-1, n-2, ..., 1)`.
//! - The operator index of box `(i, j)` is `n - i + j`.
//! - 0/1 Yamanouchi words of length `2n` encode the boundary Dyck path of a
//!   partition inside the staircase, vertical steps written as `1`.
//! - The "diagonal `d`" is the anti-diagonal through the boxes with
//!   `i + j = d`; a ribbon never contains a box beyond it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{PhkError, Result};

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// An integer partition: weakly decreasing positive parts, trailing zeros
/// trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: &[u32]) -> Self {
        let mut v: Vec<u32> = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        assert!(
            v.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The staircase `(n-1, n-2, ..., 1)`.
    pub fn staircase(n: usize) -> Self {
        Self((1..n).rev().map(|k| k as u32).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, other: &Self) -> bool {
        (0..other.num_rows()).all(|i| other.part(i) <= self.part(i))
    }

    pub fn fits_staircase(&self, n: usize) -> bool {
        Self::staircase(n).contains(self)
    }

    pub fn conjugate(&self) -> Self {
        if self.0.is_empty() {
            return Self::empty();
        }
        let cols = self.0[0] as usize;
        let mut v = vec![0u32; cols];
        for (j, item) in v.iter_mut().enumerate() {
            *item = self.0.iter().filter(|&&p| p as usize > j).count() as u32;
        }
        Self(v)
    }

    pub fn has_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.num_rows() && j <= self.part(i - 1) as usize
    }

    /// All parts even.
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&p| p % 2 == 0)
    }

    /// Append an extra part equal to 1.
    pub fn push_one(&self) -> Self {
        let mut v = self.0.clone();
        assert!(v.last().copied().unwrap_or(u32::MAX) >= 1);
        v.push(1);
        Self(v)
    }

    /// Add 1 to the first `k` parts (padding with zero parts as needed).
    pub fn add_column(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(v.len().max(k), 0);
        for item in v.iter_mut().take(k) {
            *item += 1;
        }
        Self::new(&v)
    }

    /// Delete the first column: subtract 1 from every positive part.
    pub fn delete_column(&self) -> Self {
        let v: Vec<u32> = self.0.iter().map(|&p| p - 1).collect();
        Self::new(&v)
    }

    /// Remove a set of cells, which must leave a partition.
    pub fn remove_cells(&self, cells: &BTreeSet<(usize, usize)>) -> Option<Self> {
        let mut rows = self.0.clone();
        for &(i, j) in cells {
            if !self.has_cell(i, j) {
                return None;
            }
            rows[i - 1] -= 1;
        }
        // removed cells must be the rightmost ones of each row
        for &(i, j) in cells {
            if (j as u32) <= rows[i - 1] {
                return None;
            }
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Self::new(&rows))
    }

    /// Every sub-partition of `self`, smallest first in no particular order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = Vec::new();
        fn rec(bound: &[u32], row: usize, prev: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::new(current));
            if row >= bound.len() {
                return;
            }
            let cap = prev.min(bound[row]);
            for p in (1..=cap).rev() {
                current.push(p);
                rec(bound, row + 1, p, current, out);
                current.pop();
            }
        }
        rec(&self.0, 0, u32::MAX, &mut current, &mut out);
        out.sort();
        out.dedup();
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(s);
        let inner = inner.trim();
        if inner.is_empty() || inner == "0" {
            return Ok(Self::empty());
        }
        let mut v = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| PhkError::Parse(format!("bad partition `{s}`")))?;
            if p > 0 {
                v.push(p);
            }
        }
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(PhkError::Parse(format!("parts not decreasing in `{s}`")));
        }
        Ok(Self(v))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// Yamanouchi words
// ---------------------------------------------------------------------------

/// A word over the nonnegative integers in which every right factor contains
/// at least as many occurrences of `i` as of `i+1`, for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YamWord(Vec<u32>);

impl YamWord {
    pub fn new(letters: &[u32]) -> Result<Self> {
        let w = Self(letters.to_vec());
        if !w.is_yamanouchi() {
            return Err(PhkError::NotYamanouchi(w.to_string()));
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_yamanouchi(&self) -> bool {
        let max = self.0.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0i64; max as usize + 2];
        for &c in self.0.iter().rev() {
            counts[c as usize] += 1;
            if c > 0 && counts[c as usize] > counts[c as usize - 1] {
                return false;
            }
        }
        true
    }

    /// Renumber the occurrences of each letter value from right to left by
    /// `0,1,2,...`; the result is the dual Yamanouchi word.
    pub fn dual(&self) -> YamWord {
        let max = self.0.iter().copied().max().unwrap_or(0);
        let mut seen = vec![0u32; max as usize + 1];
        let mut out = vec![0u32; self.0.len()];
        for (idx, &c) in self.0.iter().enumerate().rev() {
            out[idx] = seen[c as usize];
            seen[c as usize] += 1;
        }
        YamWord(out)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Option<Vec<u32>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let letters = letters.ok_or_else(|| PhkError::Parse(format!("bad word `{s}`")))?;
        Self::new(&letters)
    }
}

impl fmt::Display for YamWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 10) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// The 0/1 boundary word of `lambda` inside the staircase of size `n`:
/// walk the boundary from bottom left to top right, writing `1` for each
/// vertical step and `0` for each horizontal step.
pub fn word_from_partition(lambda: &Partition, n: usize) -> Result<YamWord> {
    if !lambda.fits_staircase(n) {
        return Err(PhkError::NotInStaircase {
            partition: lambda.to_string(),
            n,
        });
    }
    let conj = lambda.conjugate();
    let col = |j: usize| -> u32 {
        if j == 0 {
            n as u32
        } else {
            conj.part(j - 1)
        }
    };
    let mut letters = Vec::with_capacity(2 * n);
    for j in 0..n {
        for _ in 0..(col(j) - col(j + 1)) {
            letters.push(1);
        }
        letters.push(0);
    }
    YamWord::new(&letters)
}

/// Inverse of [`word_from_partition`]: the sub-partition of the staircase
/// whose boundary Dyck path is the given word.
pub fn partition_from_word(w: &YamWord, n: usize) -> Result<Partition> {
    if w.len() != 2 * n {
        return Err(PhkError::MalformedWord(format!(
            "expected length {}, got {}",
            2 * n,
            w.len()
        )));
    }
    let ones = w.letters().iter().filter(|&&c| c == 1).count();
    let zeros = w.letters().iter().filter(|&&c| c == 0).count();
    if ones != n || zeros != n {
        return Err(PhkError::MalformedWord(format!(
            "expected {n} ones and {n} zeros in `{w}`"
        )));
    }
    // column lengths from the runs of 1s before each 0
    let mut cols: Vec<u32> = Vec::with_capacity(n);
    let mut height = 0u32;
    let mut prev = n as u32;
    for &c in w.letters() {
        if c == 1 {
            height += 1;
        } else {
            let col = n as u32 - height;
            if col > prev {
                return Err(PhkError::MalformedWord(format!("`{w}` leaves the staircase")));
            }
            cols.push(col);
            prev = col;
        }
    }
    let col_partition = Partition::new(&cols);
    Ok(col_partition.conjugate())
}

// ---------------------------------------------------------------------------
// Labeled diagrams and schedules
// ---------------------------------------------------------------------------

/// One box of a labeled diagram: position, operator index `n - i + j` and
/// integer spectral label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramBox {
    pub row: usize,
    pub col: usize,
    pub op_index: usize,
    pub label: i64,
}

/// A partition inside the staircase together with an operator index and a
/// label per box; the recipe for building a basis element from the cyclic
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDiagram {
    pub n: usize,
    pub shape: Partition,
    pub boxes: Vec<DiagramBox>,
}

fn check_staircase(lambda: &Partition, n: usize) -> Result<()> {
    if !lambda.fits_staircase(n) {
        return Err(PhkError::NotInStaircase {
            partition: lambda.to_string(),
            n,
        });
    }
    Ok(())
}

/// Labels of the KL element indexed by `lambda`: the recursion
/// `v_ij = max(v_{i+1,j}, v_{i,j+1}) + 1` with `v = 0` outside the shape.
pub fn kl_labels(lambda: &Partition, n: usize) -> Result<LabeledDiagram> {
    check_staircase(lambda, n)?;
    let rows = lambda.num_rows();
    let mut v = vec![vec![0i64; lambda.part(0) as usize + 2]; rows + 2];
    for i in (1..=rows).rev() {
        for j in (1..=lambda.part(i - 1) as usize).rev() {
            let below = if i < rows { v[i + 1][j] } else { 0 };
            let right = if j < lambda.part(i - 1) as usize {
                v[i][j + 1]
            } else {
                0
            };
            v[i][j] = below.max(right) + 1;
        }
    }
    let mut boxes = Vec::new();
    for i in 1..=rows {
        for j in 1..=lambda.part(i - 1) as usize {
            boxes.push(DiagramBox {
                row: i,
                col: j,
                op_index: n - i + j,
                label: v[i][j],
            });
        }
    }
    Ok(LabeledDiagram {
        n,
        shape: lambda.clone(),
        boxes,
    })
}

/// Labels of the deformed Macdonald element: box `(i, j)` carries
/// `u_{n-i} + n - i - j + 1`, the labels being inherited from the maximal
/// staircase. The undeformed element has `u_k = 1` for all `k`.
pub fn macdonald_labels(lambda: &Partition, n: usize, u: &[i64]) -> Result<LabeledDiagram> {
    check_staircase(lambda, n)?;
    assert_eq!(u.len(), n - 1, "expected {} deformation parameters", n - 1);
    let mut boxes = Vec::new();
    for i in 1..=lambda.num_rows() {
        for j in 1..=lambda.part(i - 1) as usize {
            let label = u[n - i - 1] + (n - i - j + 1) as i64;
            if label == 0 {
                return Err(PhkError::ZeroLabel {
                    row: i,
                    col: j,
                    shape: lambda.to_string(),
                });
            }
            boxes.push(DiagramBox {
                row: i,
                col: j,
                op_index: n - i + j,
                label,
            });
        }
    }
    Ok(LabeledDiagram {
        n,
        shape: lambda.clone(),
        boxes,
    })
}

/// Linearise a diagram into an operator schedule, written in operator-product
/// order: the last entry acts first. Every box acts before all boxes below it
/// and to its right; by the Yang-Baxter equation any valid linear extension
/// yields the same polynomial. The emitted order makes boxes act row by row,
/// left to right, which reproduces the products printed for n = 3.
pub fn schedule(d: &LabeledDiagram) -> Vec<(usize, i64)> {
    let mut acting: Vec<&DiagramBox> = d.boxes.iter().collect();
    acting.sort_by_key(|b| (b.row, b.col));
    acting.iter().rev().map(|b| (b.op_index, b.label)).collect()
}

/// All linear extensions of the diagram order (boxes acting before boxes
/// below and to their right), emitted in operator-product order. Intended
/// for small shapes in order-independence tests.
pub fn all_schedules(d: &LabeledDiagram) -> Vec<Vec<(usize, i64)>> {
    let boxes: Vec<&DiagramBox> = d.boxes.iter().collect();
    let mut used = vec![false; boxes.len()];
    let mut acting: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    fn ready(boxes: &[&DiagramBox], used: &[bool], k: usize) -> bool {
        // all boxes above or to the left (same row/column) must act earlier
        boxes.iter().enumerate().all(|(m, b)| {
            used[m]
                || m == k
                || !(b.row <= boxes[k].row && b.col <= boxes[k].col)
        })
    }
    fn rec(
        boxes: &[&DiagramBox],
        used: &mut Vec<bool>,
        acting: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, i64)>>,
    ) {
        if acting.len() == boxes.len() {
            out.push(
                acting
                    .iter()
                    .rev()
                    .map(|&k| (boxes[k].op_index, boxes[k].label))
                    .collect(),
            );
            return;
        }
        for k in 0..boxes.len() {
            if !used[k] && ready(boxes, used, k) {
                used[k] = true;
                acting.push(k);
                rec(boxes, used, acting, out);
                acting.pop();
                used[k] = false;
            }
        }
    }
    rec(&boxes, &mut used, &mut acting, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Signed box count n_lambda
// ---------------------------------------------------------------------------

/// Signed count of the boxes between the Dyck path of `lambda` and the Dyck
/// path of the staircase: anti-diagonal strips of the skew region alternate
/// `+,-,+,...` starting with `+` on the strip adjacent to the staircase path
/// (boxes with `i + j = n`).
pub fn n_lambda(lambda: &Partition, n: usize) -> Result<i64> {
    check_staircase(lambda, n)?;
    let staircase = Partition::staircase(n);
    let mut total = 0i64;
    for i in 1..=staircase.num_rows() {
        for j in (lambda.part(i - 1) as usize + 1)..=(staircase.part(i - 1) as usize) {
            let depth = n - (i + j);
            total += if depth.is_multiple_of(2) { 1 } else { -1 };
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Dyck ribbons
// ---------------------------------------------------------------------------

/// A border strip of a partition: edge-connected rim cells, listed from the
/// north-east end to the south-west end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ribbon {
    pub cells: Vec<(usize, usize)>,
}

impl Ribbon {
    pub fn cell_set(&self) -> BTreeSet<(usize, usize)> {
        self.cells.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The rim of `lambda` (cells with no cell diagonally below-right), ordered
/// from `(1, lambda_1)` down to the bottom cell of the first column.
fn rim_path(lambda: &Partition) -> Vec<(usize, usize)> {
    let rows = lambda.num_rows();
    let mut path = Vec::new();
    for i in 1..=rows {
        let hi = lambda.part(i - 1) as usize;
        let lo = if i < rows { lambda.part(i) as usize } else { 1 }.max(1);
        for j in (lo..=hi).rev() {
            path.push((i, j));
        }
    }
    path
}

fn segment_removable(lambda: &Partition, seg: &[(usize, usize)]) -> bool {
    lambda.remove_cells(&seg.iter().copied().collect()).is_some()
}

/// All Dyck ribbons of `lambda` with respect to the anti-diagonal through
/// boxes with `i + j = diagonal`: removable rim segments whose cells never
/// cross the diagonal, whose north-east end lies on it, and whose south-west
/// end either also lies on it (for a proper segment) or is the final rim
/// cell of the partition.
pub fn dyck_ribbons(lambda: &Partition, diagonal: usize) -> Vec<Ribbon> {
    ribbons_impl(lambda, diagonal, false)
}

/// The ribbons entering the `T_2` recursion: the subset of [`dyck_ribbons`]
/// whose south-west end is the bottom cell of the first column, so that the
/// strip removes the last row of the shape.
pub fn base_dyck_ribbons(lambda: &Partition, diagonal: usize) -> Vec<Ribbon> {
    ribbons_impl(lambda, diagonal, true)
}

fn ribbons_impl(lambda: &Partition, diagonal: usize, base_only: bool) -> Vec<Ribbon> {
    let rim = rim_path(lambda);
    let mut out = Vec::new();
    if rim.is_empty() {
        return out;
    }
    let last = rim.len() - 1;
    let on_diag = |c: (usize, usize)| c.0 + c.1 == diagonal;
    let crosses = |c: (usize, usize)| c.0 + c.1 > diagonal;
    for p in 0..rim.len() {
        if !on_diag(rim[p]) {
            continue;
        }
        'seg: for q in p..rim.len() {
            if crosses(rim[q]) {
                break 'seg;
            }
            let terminal = q == last;
            let proper_end = q > p && on_diag(rim[q]);
            if base_only {
                if !terminal {
                    continue;
                }
            } else if !(proper_end || terminal) {
                continue;
            }
            let seg = &rim[p..=q];
            if segment_removable(lambda, seg) {
                out.push(Ribbon {
                    cells: seg.to_vec(),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Enumeration helpers
// ---------------------------------------------------------------------------

/// All partitions contained in the staircase of size `n`.
pub fn staircase_subpartitions(n: usize) -> Vec<Partition> {
    Partition::staircase(n).subpartitions()
}

/// All 0/1 Yamanouchi words of length `2n` with `n` ones, in the order of
/// their partitions from [`staircase_subpartitions`].
pub fn staircase_words(n: usize) -> Vec<YamWord> {
    staircase_subpartitions(n)
        .iter()
        .map(|p| word_from_partition(p, n).expect("subpartition fits"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts)
    }

    #[test]
    fn dual_examples() {
        let w = YamWord::parse("11011000").unwrap();
        assert_eq!(w.dual().to_string(), "32310210");
        assert_eq!(YamWord::parse("1010").unwrap().dual().to_string(), "1100");
        // n=1 instance of the maximal-word pattern (n-1)...1100: "10" and
        // "00" form a dual pair
        assert_eq!(YamWord::parse("10").unwrap().dual().to_string(), "00");
        // duality is an involution on 0/1 words
        for n in 1..=6 {
            for w in staircase_words(n) {
                assert_eq!(w.dual().dual(), w, "w={w}");
            }
        }
        // the maximal word: dual of the staircase word is (n-1)(n-1)...1100
        let stair = word_from_partition(&Partition::staircase(3), 3).unwrap();
        assert_eq!(stair.to_string(), "101010");
        assert_eq!(stair.dual().to_string(), "221100");
        assert_eq!(
            word_from_partition(&Partition::empty(), 3).unwrap().dual().to_string(),
            "210210"
        );
    }

    #[test]
    fn non_yamanouchi_rejected() {
        assert!(YamWord::parse("1001").is_err());
        assert!(YamWord::parse("0110").is_err());
    }

    #[test]
    fn word_partition_examples() {
        // (1,1) inside (3,2,1) is 11011000
        assert_eq!(
            word_from_partition(&p(&[1, 1]), 4).unwrap().to_string(),
            "11011000"
        );
        assert_eq!(
            partition_from_word(&YamWord::parse("11011000").unwrap(), 4).unwrap(),
            p(&[1, 1])
        );
        // n ones then n zeros is the empty partition
        assert_eq!(
            partition_from_word(&YamWord::parse("111000").unwrap(), 3).unwrap(),
            Partition::empty()
        );
        // the staircase word
        assert_eq!(
            partition_from_word(&YamWord::parse("101010").unwrap(), 3).unwrap(),
            p(&[2, 1])
        );
        // the n=5 product example
        assert_eq!(
            partition_from_word(&YamWord::parse("1101101000").unwrap(), 5).unwrap(),
            p(&[2, 1, 1])
        );
    }

    #[test]
    fn word_partition_roundtrip() {
        for n in 1..=7 {
            for lambda in staircase_subpartitions(n) {
                let w = word_from_partition(&lambda, n).unwrap();
                assert_eq!(partition_from_word(&w, n).unwrap(), lambda);
            }
        }
        // counts are Catalan numbers
        assert_eq!(staircase_subpartitions(4).len(), 14);
        assert_eq!(staircase_subpartitions(5).len(), 42);
    }

    #[test]
    fn kl_label_examples() {
        // lambda = (2,1), n = 3: labels 2,1 / 1
        let d = kl_labels(&p(&[2, 1]), 3).unwrap();
        let find = |i, j| {
            d.boxes
                .iter()
                .find(|b| b.row == i && b.col == j)
                .unwrap()
                .clone()
        };
        assert_eq!(find(1, 1).label, 2);
        assert_eq!(find(1, 2).label, 1);
        assert_eq!(find(2, 1).label, 1);
        assert_eq!(find(1, 1).op_index, 3);
        assert_eq!(find(2, 1).op_index, 2);
        assert_eq!(find(1, 2).op_index, 4);

        // single box at n=3: label 1, operator index 3
        let d = kl_labels(&p(&[1]), 3).unwrap();
        assert_eq!(d.boxes.len(), 1);
        assert_eq!(d.boxes[0].label, 1);
        assert_eq!(d.boxes[0].op_index, 3);

        // (3,2,1,1): first column labels 4,3,2,1 top-down
        let d = kl_labels(&p(&[3, 2, 1, 1]), 5).unwrap();
        let col1: Vec<i64> = (1..=4)
            .map(|i| {
                d.boxes
                    .iter()
                    .find(|b| b.row == i && b.col == 1)
                    .unwrap()
                    .label
            })
            .collect();
        assert_eq!(col1, vec![4, 3, 2, 1]);
    }

    #[test]
    fn macdonald_label_examples() {
        // lambda = (2,1), n = 3, u = (5, 7): row1 u2+2, u2+1; row2 u1+1
        let d = macdonald_labels(&p(&[2, 1]), 3, &[5, 7]).unwrap();
        let find = |i, j| {
            d.boxes
                .iter()
                .find(|b| b.row == i && b.col == j)
                .unwrap()
                .label
        };
        assert_eq!(find(1, 1), 7 + 2);
        assert_eq!(find(1, 2), 7 + 1);
        assert_eq!(find(2, 1), 5 + 1);

        // undeformed single box: T_3(3)
        let d = macdonald_labels(&p(&[1]), 3, &[1, 1]).unwrap();
        assert_eq!(d.boxes[0].op_index, 3);
        assert_eq!(d.boxes[0].label, 3);

        // (1,1) at u=(1,1): labels 3 and 2
        let d = macdonald_labels(&p(&[1, 1]), 3, &[1, 1]).unwrap();
        let labels: Vec<i64> = d.boxes.iter().map(|b| b.label).collect();
        assert_eq!(labels, vec![3, 2]);

        // a zero operator argument is rejected
        assert!(macdonald_labels(&p(&[2]), 3, &[1, -2]).is_err());
    }

    #[test]
    fn schedule_reproduces_printed_products() {
        // KL_(1,1) = T_2(1) T_3(2)
        let s = schedule(&kl_labels(&p(&[1, 1]), 3).unwrap());
        assert_eq!(s, vec![(2, 1), (3, 2)]);
        // KL_(2,1) = T_2(1) T_4(1) T_3(2)
        let s = schedule(&kl_labels(&p(&[2, 1]), 3).unwrap());
        assert_eq!(s, vec![(2, 1), (4, 1), (3, 2)]);
        // KL_(2) = T_4(1) T_3(2)
        let s = schedule(&kl_labels(&p(&[2]), 3).unwrap());
        assert_eq!(s, vec![(4, 1), (3, 2)]);
        // M_(2,1)(u1,u2) = T_2(u1+1) T_4(u2+1) T_3(u2+2)
        let s = schedule(&macdonald_labels(&p(&[2, 1]), 3, &[1, 1]).unwrap());
        assert_eq!(s, vec![(2, 2), (4, 2), (3, 3)]);
    }

    #[test]
    fn n_lambda_examples() {
        // signed strips of (3,1) at n = 6 give 5 - 4 + 2 = 3
        assert_eq!(n_lambda(&p(&[3, 1]), 6).unwrap(), 3);
        assert_eq!(n_lambda(&Partition::staircase(4), 4).unwrap(), 0);
        assert_eq!(n_lambda(&Partition::empty(), 3).unwrap(), 1);
        // n=3 values matching the y-degrees of the expansion table
        assert_eq!(n_lambda(&p(&[2]), 3).unwrap(), 1);
        assert_eq!(n_lambda(&p(&[1, 1]), 3).unwrap(), 1);
        assert_eq!(n_lambda(&p(&[1]), 3).unwrap(), 2);
    }

    #[test]
    fn ribbon_examples() {
        // (7,5,3,3,2,1,1,1) with its corner diagonal has exactly 3 ribbons
        let lam = p(&[7, 5, 3, 3, 2, 1, 1, 1]);
        let ribbons = dyck_ribbons(&lam, 7);
        assert_eq!(ribbons.len(), 3);
        for r in &ribbons {
            let removed = lam.remove_cells(&r.cell_set());
            assert!(removed.is_some());
        }

        // the empty partition has no ribbons
        assert!(dyck_ribbons(&Partition::empty(), 3).is_empty());

        // (2,1) with the diagonal through its corner boxes: exactly the two
        // strips removed by the T_2 action, leaving (2) and the empty shape
        let ribbons = dyck_ribbons(&p(&[2, 1]), 3);
        let results: BTreeSet<Partition> = ribbons
            .iter()
            .map(|r| p(&[2, 1]).remove_cells(&r.cell_set()).unwrap())
            .collect();
        let expect: BTreeSet<Partition> = [p(&[2]), Partition::empty()].into_iter().collect();
        assert_eq!(results, expect);

        // (3,1): only one ribbon, leaving (3)
        let ribbons = base_dyck_ribbons(&p(&[3, 1]), 3);
        assert_eq!(ribbons.len(), 1);
        assert_eq!(
            p(&[3, 1]).remove_cells(&ribbons[0].cell_set()).unwrap(),
            p(&[3])
        );

        // (1,1) at n=4: the vertical domino is not a ribbon (its upper end
        // misses the diagonal), only the single bottom box is
        let ribbons = base_dyck_ribbons(&p(&[1, 1]), 3);
        assert_eq!(ribbons.len(), 1);
        assert_eq!(
            p(&[1, 1]).remove_cells(&ribbons[0].cell_set()).unwrap(),
            p(&[1])
        );
    }

    #[test]
    fn partition_parse_display() {
        assert_eq!(Partition::parse("3,1").unwrap(), p(&[3, 1]));
        assert_eq!(Partition::parse("()").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
        assert!(Partition::parse("1,3").is_err());
    }
}
