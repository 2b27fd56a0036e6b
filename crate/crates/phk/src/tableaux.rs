//! Weighted enumeration of augmented non-intersecting lattice paths and the
//! tableau objects in bijection with them.
//!
//! The canonical representation is the staircase [`Filling`]: `n-1` rows,
//! row `r` (0-based) of length `n-1-r` with border value `r` on the right,
//! weakly decreasing left to right with unit steps, and columns weakly
//! increasing downwards (which is exactly non-intersection of the paths).
//!
//! Row `r` read right to left describes the path starting at `(k, -k)` with
//! `k = n-1-r`: an increase is a north step, otherwise north-east. The
//! augmentation prepends column 0, rounding the first column up to the
//! parity of `n-1`; together with the trivial path from the origin this
//! makes the endpoint x-coordinates start at 1 with odd successive
//! differences. A vertical step from `y = -m+1` to `y = -m+2`... more
//! precisely, a vertical step ending at height `y = 1-m` carries weight
//! `t_m`, the augmented vertical step carries `t_0`.
//!
//! Reading the augmented filling by decrease positions yields a skew
//! [`FlaggedTableau`] of outer staircase shape whose weight (entry `v`
//! contributing `t_{v-1}`) equals the path weight.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{PhkError, Result};
use crate::exactalg::Rat;
use crate::qpoly::{QPoly, VarTable};
use crate::shapes::Partition;

/// The weight symbol table `t0..t{n-1}`.
pub fn weight_table(n: usize) -> VarTable {
    let syms: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
    VarTable::new(&syms)
}

// ---------------------------------------------------------------------------
// Fillings
// ---------------------------------------------------------------------------

/// A staircase filling: row `r` (0-based) has `n-1-r` cells and border `r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Filling {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl Filling {
    pub fn new(n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let f = Self { n, rows };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        if self.rows.len() + 1 != self.n {
            return Err(PhkError::Unsupported(format!(
                "expected {} rows, got {}",
                self.n - 1,
                self.rows.len()
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.n - 1 - r {
                return Err(PhkError::Unsupported(format!(
                    "row {r} must have {} cells",
                    self.n - 1 - r
                )));
            }
            let border = r as u32;
            let mut prev = None;
            for &v in row {
                if let Some(p) = prev {
                    if v > p || p - v > 1 {
                        return Err(PhkError::Unsupported(format!(
                            "row {r} must weakly decrease with unit steps"
                        )));
                    }
                }
                prev = Some(v);
            }
            let last = *row.last().expect("rows are nonempty");
            if last < border || last - border > 1 {
                return Err(PhkError::Unsupported(format!(
                    "row {r} must end at its border value {border} or one above"
                )));
            }
        }
        // columns weakly increase downwards: exactly path non-intersection
        for r in 0..self.rows.len().saturating_sub(1) {
            for j in 0..self.rows[r + 1].len() {
                if self.rows[r][j] > self.rows[r + 1][j] {
                    return Err(PhkError::Unsupported(format!(
                        "column {j} decreases between rows {r} and {}",
                        r + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Prepend column 0: the smallest value of the parity of `n-1` that is
    /// at least the first cell of each row.
    pub fn augment(&self) -> AugFilling {
        let parity = ((self.n - 1) % 2) as u32;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let first = row[0];
                let col0 = if first % 2 == parity { first } else { first + 1 };
                let mut out = Vec::with_capacity(row.len() + 1);
                out.push(col0);
                out.extend_from_slice(row);
                out
            })
            .collect();
        AugFilling { n: self.n, rows }
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                format!("{} ({r})", cells.join(" "))
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// A filling with its augmented column 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugFilling {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl AugFilling {
    pub fn col0(&self, r: usize) -> u32 {
        self.rows[r][0]
    }

    /// Positions (1-based, border gap included) where row `r` strictly
    /// decreases, reading left to right.
    fn decrease_positions(&self, r: usize) -> Vec<usize> {
        let row = &self.rows[r];
        let border = r as u32;
        let mut out = Vec::new();
        for p in 1..row.len() {
            if row[p] < row[p - 1] {
                out.push(p);
            }
        }
        if border < row[row.len() - 1] {
            out.push(row.len());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Lattice paths
// ---------------------------------------------------------------------------

/// A single path step: north or north-east.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    N,
    NE,
}

/// A lattice path from `(k, -k)` to the line `y = 1`: `k` regular steps up
/// to the axis followed by one augmented step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    pub start: (i64, i64),
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = vec![self.start];
        let (mut x, mut y) = self.start;
        for s in &self.steps {
            y += 1;
            if matches!(s, Step::NE) {
                x += 1;
            }
            out.push((x, y));
        }
        out
    }

    pub fn endpoint(&self) -> (i64, i64) {
        *self.vertices().last().unwrap()
    }
}

/// An augmented non-intersecting lattice path configuration: the trivial
/// path from the origin plus one path from `(k, -k)` for each `k < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpConfig {
    pub n: usize,
    pub paths: Vec<LatticePath>,
}

impl NilpConfig {
    /// Check vertex-disjointness and the endpoint conditions: first endpoint
    /// at `x = 1`, successive differences odd.
    pub fn validate(&self) -> Result<()> {
        let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
        for p in &self.paths {
            for v in p.vertices() {
                if !seen.insert(v) {
                    return Err(PhkError::Unsupported(format!(
                        "paths intersect at {v:?}"
                    )));
                }
            }
        }
        let ends: Vec<i64> = self.paths.iter().map(|p| p.endpoint().0).collect();
        if ends.first() != Some(&1) {
            return Err(PhkError::Unsupported(format!(
                "first endpoint must be 1, got {ends:?}"
            )));
        }
        for w in ends.windows(2) {
            if (w[1] - w[0]).rem_euclid(2) != 1 {
                return Err(PhkError::Unsupported(format!(
                    "endpoint difference must be odd: {ends:?}"
                )));
            }
        }
        Ok(())
    }

    /// The weight monomial: `t_0` per augmented vertical step, `t_m` per
    /// vertical step ending at height `1 - m`.
    pub fn weight(&self, vars: &VarTable) -> QPoly {
        let mut exps = vec![0i32; vars.len()];
        for path in &self.paths {
            let k = path.start.0;
            for (j, s) in path.steps.iter().enumerate() {
                if matches!(s, Step::N) {
                    // step j (0-based) ends at height j+1-k
                    let m = (k - j as i64).max(0) as usize;
                    exps[m] += 1;
                }
            }
        }
        QPoly::monomial(vars, exps, Rat::from_integer(1.into()))
    }
}

impl fmt::Display for NilpConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paths: Vec<String> = self
            .paths
            .iter()
            .map(|p| {
                let steps: Vec<&str> = p
                    .steps
                    .iter()
                    .map(|s| match s {
                        Step::N => "N",
                        Step::NE => "NE",
                    })
                    .collect();
                format!("({},{}):{}", p.start.0, p.start.1, steps.join(""))
            })
            .collect();
        write!(f, "{}", paths.join(" | "))
    }
}

/// Paths from the augmented filling: row `r` drives the path with
/// `k = n-1-r` regular steps, the column-0 gap being the augmented step.
pub fn filling_to_nilp(f: &Filling) -> NilpConfig {
    let aug = f.augment();
    let mut paths = vec![LatticePath {
        start: (0, 0),
        steps: vec![Step::NE],
    }];
    for k in 1..f.n {
        let r = f.n - 1 - k;
        let row = &aug.rows[r];
        let border = r as u32;
        // gap p (1-based from the left, border gap last) is step k+2-p
        let mut steps = vec![Step::NE; k + 1];
        let decrease = |left: u32, right: u32| left > right;
        for p in 1..row.len() {
            if decrease(row[p - 1], row[p]) {
                steps[k + 1 - p] = Step::N;
            }
        }
        if decrease(row[row.len() - 1], border) {
            steps[0] = Step::N;
        }
        paths.push(LatticePath {
            start: (k as i64, -(k as i64)),
            steps,
        });
    }
    NilpConfig { n: f.n, paths }
}

/// Inverse of [`filling_to_nilp`]; rejects configurations whose augmented
/// steps disagree with the parity rule.
pub fn nilp_to_filling(c: &NilpConfig) -> Result<Filling> {
    let n = c.n;
    if c.paths.len() != n {
        return Err(PhkError::Unsupported(format!(
            "expected {} paths, got {}",
            n,
            c.paths.len()
        )));
    }
    let mut rows = vec![Vec::new(); n - 1];
    for k in 1..n {
        let r = n - 1 - k;
        let path = &c.paths[k];
        if path.steps.len() != k + 1 {
            return Err(PhkError::Unsupported(format!(
                "path {k} must have {} steps",
                k + 1
            )));
        }
        let border = r as u32;
        // reconstruct the augmented row from right to left
        let mut values = vec![0u32; k + 1];
        let mut current = border;
        for p in (0..=k).rev() {
            // gap p+1 is step k+1-p (0-based index k-p ... adjust)
            let step = path.steps[k - p];
            if matches!(step, Step::N) {
                current += 1;
            }
            values[p] = current;
        }
        let filling_row: Vec<u32> = values[1..].to_vec();
        rows[r] = filling_row;
    }
    let f = Filling::new(n, rows)?;
    // the augmentation must reproduce the given augmented steps
    if &filling_to_nilp(&f) != c {
        return Err(PhkError::Unsupported(
            "augmented steps violate the parity rule".into(),
        ));
    }
    Ok(f)
}

/// All fillings of size `n`, by direct recursive enumeration.
pub fn enumerate_fillings(n: usize) -> Vec<Filling> {
    fn extend_row(
        n: usize,
        r: usize,
        row: &mut Vec<u32>,
        above: Option<&Vec<u32>>,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<Filling>,
    ) {
        let len = n - 1 - r;
        if row.len() == len {
            rows.push(row.clone());
            if r + 1 == n - 1 {
                out.push(Filling {
                    n,
                    rows: rows.clone(),
                });
            } else {
                let prev = rows.last().cloned().unwrap();
                let mut next = Vec::new();
                extend_row(n, r + 1, &mut next, Some(&prev), rows, out);
            }
            rows.pop();
            return;
        }
        let j = row.len();
        let border = r as u32;
        // candidate values: bounded by the left neighbour (or unconstrained),
        // at least the value above (column condition), and able to reach the
        // border with unit decreases
        let remaining = (len - j - 1) as u32;
        let hi = if j == 0 {
            border + remaining + 1
        } else {
            row[j - 1]
        };
        let mut lo = if j == 0 {
            0
        } else {
            row[j - 1].saturating_sub(1)
        };
        if let Some(above) = above {
            lo = lo.max(above[j]);
        }
        lo = lo.max(border);
        for v in lo..=hi {
            // must still reach the border: v <= border + remaining + 1
            if v > border + remaining + 1 {
                continue;
            }
            row.push(v);
            extend_row(n, r, row, above, rows, out);
            row.pop();
        }
    }

    if n == 1 {
        return vec![Filling {
            n: 1,
            rows: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    let mut rows = Vec::new();
    let mut row = Vec::new();
    extend_row(n, 0, &mut row, None, &mut rows, &mut out);
    out.sort();
    out
}

/// All augmented configurations with their weight monomials in
/// `t0..t{n-1}`. Bounded by `PHK_MAX_N` (default 6).
pub fn enumerate_nilp(n: usize) -> Result<Vec<(NilpConfig, QPoly)>> {
    let bound = crate::max_n(6);
    if n > bound {
        return Err(PhkError::Unsupported(format!(
            "enumerate_nilp bounded at n={bound} (set PHK_MAX_N to raise)"
        )));
    }
    let vars = weight_table(n);
    Ok(enumerate_fillings(n)
        .iter()
        .map(|f| {
            let c = filling_to_nilp(f);
            let w = c.weight(&vars);
            (c, w)
        })
        .collect())
}

/// The weighted path count: the sum of all configuration weights as a
/// polynomial in `t0..t{n-1}`.
pub fn nilp_generating_function(n: usize) -> Result<QPoly> {
    let vars = weight_table(n);
    let mut acc = QPoly::zero(&vars);
    for (_, w) in enumerate_nilp(n)? {
        acc = acc.add(&w);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Flagged skew tableaux
// ---------------------------------------------------------------------------

/// A skew tableau in the Cartesian (French) convention: `rows[0]` is the
/// bottom row; row `l` (0-based) holds the entries of the cells outside the
/// inner shape. Columns strictly increase upwards, rows weakly increase to
/// the right, and row `l` is capped by `l + 2` (the flag `2, 3, ..., n`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlaggedTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl FlaggedTableau {
    pub fn validate(&self) -> Result<()> {
        if !self.outer.contains(&self.inner) {
            return Err(PhkError::Unsupported("inner shape not contained".into()));
        }
        let rows = self.outer.num_rows();
        if self.rows.len() != rows {
            return Err(PhkError::Unsupported("row count mismatch".into()));
        }
        let full = self.grid();
        for l in 0..rows {
            let skew = self.outer.part(l) as usize - self.inner.part(l) as usize;
            if self.rows[l].len() != skew {
                return Err(PhkError::Unsupported(format!("row {l} length mismatch")));
            }
            for (idx, &v) in self.rows[l].iter().enumerate() {
                if v == 0 || v > (l + 2) as u32 {
                    return Err(PhkError::Unsupported(format!(
                        "entry {v} in row {l} violates the flag"
                    )));
                }
                if idx > 0 && self.rows[l][idx - 1] > v {
                    return Err(PhkError::Unsupported(format!(
                        "row {l} not weakly increasing"
                    )));
                }
            }
        }
        // strict column increase upwards
        let cols = self.outer.part(0) as usize;
        for c in 0..cols {
            let mut prev: Option<u32> = None;
            for l in 0..rows {
                if let Some(v) = full[l].get(c).copied().flatten() {
                    if let Some(p) = prev {
                        if v <= p {
                            return Err(PhkError::Unsupported(format!(
                                "column {c} not strictly increasing"
                            )));
                        }
                    }
                    prev = Some(v);
                } else if c < self.inner.part(l) as usize {
                    prev = None;
                }
            }
        }
        Ok(())
    }

    /// Full grid including inner cells as `None`.
    fn grid(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.outer.num_rows())
            .map(|l| {
                let inner = self.inner.part(l) as usize;
                let outer = self.outer.part(l) as usize;
                let mut row = vec![None; outer];
                for c in inner..outer {
                    row[c] = Some(self.rows[l][c - inner]);
                }
                row
            })
            .collect()
    }

    /// Weight: entry `v` contributes `t_{v-1}`.
    pub fn weight(&self, vars: &VarTable) -> QPoly {
        let mut exps = vec![0i32; vars.len()];
        for row in &self.rows {
            for &v in row {
                exps[(v - 1) as usize] += 1;
            }
        }
        QPoly::monomial(vars, exps, Rat::from_integer(1.into()))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner_s = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| PhkError::Parse(format!("expected `[..]`, got `{s}`")))?;
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        for row_s in inner_s.split('|') {
            let cells: Vec<&str> = row_s.split_whitespace().collect();
            let dots = cells.iter().take_while(|c| **c == ".").count();
            let entries: std::result::Result<Vec<u32>, _> =
                cells[dots..].iter().map(|c| c.parse::<u32>()).collect();
            outer.push(cells.len() as u32);
            inner.push(dots as u32);
            rows.push(entries.map_err(|e| PhkError::Parse(e.to_string()))?);
        }
        let t = FlaggedTableau {
            outer: Partition::new(&outer),
            inner: Partition::new(&inner),
            rows,
        };
        t.validate()?;
        Ok(t)
    }
}

impl fmt::Display for FlaggedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.outer.num_rows())
            .map(|l| {
                let inner = self.inner.part(l) as usize;
                let mut cells: Vec<String> = vec![".".into(); inner];
                cells.extend(self.rows[l].iter().map(|v| v.to_string()));
                cells.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// Read the augmented filling as a skew tableau: the inner shape has column
/// lengths `(n-1) - col0`, and column `c` (1-based) is filled bottom to top
/// with the decrease positions of augmented row `c-1`.
pub fn filling_to_skew_tableau(f: &Filling) -> Result<FlaggedTableau> {
    let n = f.n;
    let aug = f.augment();
    let outer = Partition::staircase(n);
    let inner_cols: Vec<u32> = (0..n - 1)
        .map(|r| (n as u32 - 1) - aug.col0(r))
        .collect();
    let inner = Partition::new(&inner_cols).conjugate();
    let mut grid: Vec<Vec<Option<u32>>> = (0..n - 1)
        .map(|l| vec![None; outer.part(l) as usize])
        .collect();
    for c in 1..n {
        let positions = aug.decrease_positions(c - 1);
        let lo = inner_cols[c - 1] as usize; // cells above the inner column
        for (offset, &p) in positions.iter().enumerate() {
            let l = lo + offset; // 0-based French row
            grid[l][c - 1] = Some(p as u32);
        }
    }
    let rows: Vec<Vec<u32>> = (0..n - 1)
        .map(|l| {
            let start = inner.part(l) as usize;
            (start..outer.part(l) as usize)
                .map(|c| grid[l][c].expect("cell filled"))
                .collect()
        })
        .collect();
    let t = FlaggedTableau { outer, inner, rows };
    t.validate()?;
    Ok(t)
}

/// All flagged skew tableaux of the given shapes: rows weakly increase,
/// columns strictly increase upwards, row `l` (0-based from the bottom) is
/// capped by `l + 2`.
pub fn enumerate_flagged(outer: &Partition, inner: &Partition) -> Result<Vec<FlaggedTableau>> {
    if !outer.contains(inner) {
        return Err(PhkError::Unsupported(format!(
            "inner ({inner}) not contained in outer ({outer})"
        )));
    }
    let rows = outer.num_rows();
    let mut out = Vec::new();
    let mut grid: Vec<Vec<Option<u32>>> = (0..rows)
        .map(|l| vec![None; outer.part(l) as usize])
        .collect();
    // cells in reading order: bottom row, left to right, then upwards
    let mut cells = Vec::new();
    for l in 0..rows {
        for c in inner.part(l) as usize..outer.part(l) as usize {
            cells.push((l, c));
        }
    }
    fn rec(
        cells: &[(usize, usize)],
        idx: usize,
        inner: &Partition,
        grid: &mut Vec<Vec<Option<u32>>>,
        out: &mut Vec<(Vec<Vec<Option<u32>>>,)>,
    ) {
        if idx == cells.len() {
            out.push((grid.clone(),));
            return;
        }
        let (l, c) = cells[idx];
        let cap = (l + 2) as u32;
        let mut lo = 1u32;
        if c > inner.part(l) as usize {
            lo = lo.max(grid[l][c - 1].unwrap());
        }
        if l > 0 {
            if let Some(below) = grid[l - 1].get(c).copied().flatten() {
                lo = lo.max(below + 1);
            }
        }
        for v in lo..=cap {
            grid[l][c] = Some(v);
            rec(cells, idx + 1, inner, grid, out);
            grid[l][c] = None;
        }
    }
    let mut raw = Vec::new();
    rec(&cells, 0, inner, &mut grid, &mut raw);
    for (g,) in raw {
        let rows_out: Vec<Vec<u32>> = (0..rows)
            .map(|l| {
                (inner.part(l) as usize..outer.part(l) as usize)
                    .map(|c| g[l][c].unwrap())
                    .collect()
            })
            .collect();
        let t = FlaggedTableau {
            outer: outer.clone(),
            inner: inner.clone(),
            rows: rows_out,
        };
        t.validate()?;
        out.push(t);
    }
    out.sort();
    Ok(out)
}

/// The flagged generating function: the sum of `prod t_{entry-1}` over all
/// flagged skew tableaux of the given shapes, as a polynomial in
/// `t0..t{n-1}`.
pub fn flagged_gen(outer: &Partition, inner: &Partition, n: usize) -> Result<QPoly> {
    let vars = weight_table(n);
    let mut acc = QPoly::zero(&vars);
    for t in enumerate_flagged(outer, inner)? {
        acc = acc.add(&t.weight(&vars));
    }
    Ok(acc)
}

/// Inner shapes with all column lengths even (the shapes conjugate to even
/// partitions inside the staircase).
pub fn even_column_inners(n: usize) -> Vec<Partition> {
    Partition::staircase(n)
        .subpartitions()
        .into_iter()
        .filter(|p| p.is_even())
        .map(|p| p.conjugate())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filling(n: usize, rows: &[&[u32]]) -> Filling {
        Filling::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn tau_spec(n: usize, t0: (i64, i64)) -> Vec<QPoly> {
        // images of t0..t_{n-1} in the table ["t", "T"]: t0 -> t^a T^b,
        // others -> T
        let target = VarTable::new(&["t", "T"]);
        let mut images = vec![QPoly::monomial(
            &target,
            vec![t0.0 as i32, t0.1 as i32],
            Rat::from_integer(1.into()),
        )];
        for _ in 1..n {
            images.push(QPoly::var(&target, 1));
        }
        images
    }

    #[test]
    fn counts_match_classical_sequence() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_fillings(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42]);
    }

    #[test]
    fn n2_configurations() {
        let configs = enumerate_nilp(2).unwrap();
        assert_eq!(configs.len(), 2);
        let vars = weight_table(2);
        let gf = nilp_generating_function(2).unwrap();
        assert_eq!(gf, QPoly::var(&vars, 0).add(&QPoly::var(&vars, 1)));
        for (c, _) in &configs {
            c.validate().unwrap();
        }
    }

    #[test]
    fn seven_path_example() {
        // the printed seven weighted paths live at module size n = 3
        let configs = enumerate_nilp(3).unwrap();
        assert_eq!(configs.len(), 7);
        for (c, _) in &configs {
            c.validate().unwrap();
        }
        let gf = nilp_generating_function(3).unwrap();
        // under (t0, t1, t2) = (t, tau, tau):
        // tau^3 + 2 t tau^2 + 2 t^2 tau + tau + t
        let target = VarTable::new(&["t", "T"]);
        let spec = gf.substitute(&tau_spec(3, (1, 0)), &target).unwrap();
        let mono = |a: i32, b: i32, c: i64| {
            QPoly::monomial(&target, vec![a, b], Rat::from_integer(c.into()))
        };
        let expect = mono(0, 3, 1)
            .add(&mono(1, 2, 2))
            .add(&mono(2, 1, 2))
            .add(&mono(0, 1, 1))
            .add(&mono(1, 0, 1));
        assert_eq!(spec, expect);
    }

    #[test]
    fn printed_specializations() {
        let gf = nilp_generating_function(3).unwrap();
        let target = VarTable::new(&["t", "T"]);
        // (tau^-1, tau, tau): 3 tau^-1 + 3 tau + tau^3
        let spec = gf.substitute(&tau_spec(3, (0, -1)), &target).unwrap();
        let mono = |b: i32, c: i64| {
            QPoly::monomial(&target, vec![0, b], Rat::from_integer(c.into()))
        };
        let expect = mono(-1, 3).add(&mono(1, 3)).add(&mono(3, 1));
        assert_eq!(spec, expect);
        // (1, tau, tau): 1 + 3 tau + 2 tau^2 + tau^3
        let spec = gf.substitute(&tau_spec(3, (0, 0)), &target).unwrap();
        let expect = mono(0, 1)
            .add(&mono(1, 3))
            .add(&mono(2, 2))
            .add(&mono(3, 1));
        assert_eq!(spec, expect);
    }

    #[test]
    fn augmentation_examples() {
        // the n=5 worked example
        let f = filling(5, &[&[1, 1, 1, 0], &[2, 2, 1], &[3, 3], &[3]]);
        let aug = f.augment();
        assert_eq!(aug.rows[0], vec![2, 1, 1, 1, 0]);
        assert_eq!(aug.rows[1], vec![2, 2, 2, 1]);
        assert_eq!(aug.rows[2], vec![4, 3, 3]);
        assert_eq!(aug.rows[3], vec![4, 3]);

        // single row (0) at n=2: odd row count, prepend 1
        let f = filling(2, &[&[0]]);
        assert_eq!(f.augment().rows[0], vec![1, 0]);

        // all-zero filling with an even number of rows: column of zeros
        let f = filling(3, &[&[0, 0], &[1]]);
        assert_eq!(f.augment().rows[0], vec![0, 0, 0]);
    }

    #[test]
    fn worked_nilp_structure() {
        let f = filling(5, &[&[1, 1, 1, 0], &[2, 2, 1], &[3, 3], &[3]]);
        let c = filling_to_nilp(&f);
        c.validate().unwrap();
        // endpoints 1, 2, 3, 6, 7
        let ends: Vec<i64> = c.paths.iter().map(|p| p.endpoint().0).collect();
        assert_eq!(ends, vec![1, 2, 3, 6, 7]);
        // weight t0^3 t2^2 t3
        let vars = weight_table(5);
        let w = c.weight(&vars);
        assert_eq!(
            w,
            QPoly::monomial(&vars, vec![3, 0, 2, 1, 0], Rat::from_integer(1.into()))
        );
    }

    #[test]
    fn minimal_filling_is_all_ne() {
        // every cell at its border value: all regular steps are north-east
        // (only the parity augmentation may add vertical steps)
        let f = filling(4, &[&[0, 0, 0], &[1, 1], &[2]]);
        let c = filling_to_nilp(&f);
        for path in &c.paths[1..] {
            let regular = &path.steps[..path.steps.len() - 1];
            assert!(regular.iter().all(|s| matches!(s, Step::NE)));
        }
    }

    #[test]
    fn nilp_filling_roundtrip() {
        for n in 2..=4 {
            for f in enumerate_fillings(n) {
                let c = filling_to_nilp(&f);
                c.validate().unwrap();
                let back = nilp_to_filling(&c).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn tableau_reading_worked_example() {
        let f = filling(5, &[&[1, 1, 1, 0], &[2, 2, 1], &[3, 3], &[3]]);
        let t = filling_to_skew_tableau(&f).unwrap();
        // inner shape: 4444 - 2244 = 2200 as column lengths, i.e. rows (2,2)
        assert_eq!(t.inner, Partition::new(&[2, 2]));
        assert_eq!(t.to_string(), "[. . 1 1 | . . 3 | 1 3 | 4]");
        // weight transported from the path picture
        let vars = weight_table(5);
        assert_eq!(t.weight(&vars), filling_to_nilp(&f).weight(&vars));
        // display parses back
        let parsed = FlaggedTableau::parse(&t.to_string()).unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    fn weight_preserved_exhaustively_n3() {
        let vars = weight_table(3);
        for f in enumerate_fillings(3) {
            let c = filling_to_nilp(&f);
            let t = filling_to_skew_tableau(&f).unwrap();
            assert_eq!(c.weight(&vars), t.weight(&vars));
            // inner columns are even
            let cols = t.inner.conjugate();
            assert!(cols.parts().iter().all(|&p| p % 2 == 0));
        }
    }

    #[test]
    fn flagged_gen_examples() {
        let rho = Partition::new(&[2, 1]);
        let vars = weight_table(3);
        let t = |k: usize| QPoly::var(&vars, k);
        // inner empty: five tableaux
        let g = flagged_gen(&rho, &Partition::empty(), 3).unwrap();
        let expect = t(0)
            .pow(2)
            .mul(&t(2))
            .add(&t(0).mul(&t(1)).mul(&t(2)))
            .add(&t(1).pow(2).mul(&t(2)))
            .add(&t(0).pow(2).mul(&t(1)))
            .add(&t(0).mul(&t(1).pow(2)));
        assert_eq!(g, expect);
        // inner (1,1): the two single-box tableaux
        let g = flagged_gen(&rho, &Partition::new(&[1, 1]), 3).unwrap();
        assert_eq!(g, t(0).add(&t(1)));
        // outer = inner: the empty tableau
        let g = flagged_gen(&rho, &rho, 3).unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn tableau_count_matches_paths_n3() {
        let mut total = 0usize;
        for inner in even_column_inners(3) {
            total += enumerate_flagged(&Partition::staircase(3), &inner)
                .unwrap()
                .len();
        }
        assert_eq!(total, enumerate_fillings(3).len());
    }
}
