//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy).
//!
//! Cosets are defined in scan order, coincidences are merged through a
//! union-find forest and processed to exhaustion before any new definition,
//! and the table is compacted when it runs out of room and at the end.

use thiserror::Error;

use crate::group_engine::Perm;
use crate::presentations::{Letter, Presentation};

const NONE: u32 = u32::MAX;

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Ceiling on simultaneously allocated (live plus not yet reclaimed) cosets.
    pub max_cosets: usize,
    /// Ceiling on the pending-coincidence queue.
    pub max_deductions: usize,
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize) -> Self {
        EnumerationLimits { max_cosets: max_cosets.max(1), max_deductions: max_cosets.max(1) }
    }
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_COSETS)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset limit {limit} exceeded (high-water mark {high_water}); the group may be infinite or the limit too small")]
    LimitExceeded { high_water: usize, limit: usize },
    #[error("coincidence queue exceeded {limit} entries")]
    QueueOverflow { limit: usize },
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("invalid coset table: {0}")]
    Invalid(String),
}

/// A coset table over the trivial subgroup. Coset 0 is the subgroup itself.
///
/// Columns come in pairs per generator: `2g` for `g` and `2g + 1` for `g⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    num_generators: usize,
    n_cosets: usize,
    table: Vec<u32>,
}

fn column(l: Letter) -> usize {
    2 * l.index() + usize::from(l.is_inverse())
}

impl CosetTable {
    /// Builds a table from explicit rows; `rows[c][col]` follows the column layout above.
    pub fn from_rows(num_generators: usize, rows: &[Vec<Option<usize>>]) -> Result<Self, EnumerationError> {
        let ncols = 2 * num_generators;
        let mut table = Vec::with_capacity(rows.len() * ncols);
        for (c, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(EnumerationError::Invalid(format!("row {c} has {} columns, expected {ncols}", row.len())));
            }
            for &e in row {
                match e {
                    Some(d) if d >= rows.len() => {
                        return Err(EnumerationError::Invalid(format!("row {c} points at coset {d}")))
                    }
                    Some(d) => table.push(d as u32),
                    None => table.push(NONE),
                }
            }
        }
        Ok(CosetTable { num_generators, n_cosets: rows.len(), table })
    }

    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(|&e| e != NONE)
    }

    /// Image of `coset` under a letter, if defined.
    pub fn image(&self, coset: usize, letter: Letter) -> Option<usize> {
        let e = self.table[coset * 2 * self.num_generators + column(letter)];
        (e != NONE).then_some(e as usize)
    }

    /// Follows a word from a coset; `None` if it runs into an undefined entry.
    pub fn trace(&self, coset: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(coset, |c, &l| self.image(c, l))
    }

    /// Mutual-inverse columns plus closure of every relator at every coset.
    pub fn is_consistent_with(&self, pres: &Presentation) -> bool {
        if !self.is_complete() {
            return false;
        }
        for c in 0..self.n_cosets {
            for g in 0..self.num_generators {
                let d = self.image(c, Letter::gen(g)).expect("complete");
                if self.image(d, Letter::inv(g)) != Some(c) {
                    return false;
                }
            }
            for r in pres.relators() {
                if self.trace(c, r.letters()) != Some(c) {
                    return false;
                }
            }
        }
        true
    }

    /// One line per coset (1-based), images under each generator in order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.n_cosets {
            let row: Vec<String> = (0..self.num_generators)
                .map(|g| match self.image(c, Letter::gen(g)) {
                    Some(d) => (d + 1).to_string(),
                    None => "-".to_string(),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Right-regular permutation action of each generator on the cosets.
pub fn permutation_rep(table: &CosetTable) -> Result<Vec<Perm>, EnumerationError> {
    if !table.is_complete() {
        return Err(EnumerationError::Incomplete);
    }
    (0..table.num_generators)
        .map(|g| {
            let images: Vec<usize> =
                (0..table.n_cosets).map(|c| table.image(c, Letter::gen(g)).expect("complete")).collect();
            Perm::from_images(images).map_err(|e| EnumerationError::Invalid(e.to_string()))
        })
        .collect()
}

/// Enumerates the cosets of the trivial subgroup in the presented group.
pub fn enumerate(pres: &Presentation, limits: EnumerationLimits) -> Result<CosetTable, EnumerationError> {
    let mut e = Enumerator::new(pres, limits);
    e.run()?;
    Ok(e.finish())
}

struct Enumerator {
    ncols: usize,
    num_generators: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    allocated: usize,
    live: usize,
    high_water: usize,
    limits: EnumerationLimits,
    queue: Vec<u32>,
    relators: Vec<Vec<u32>>,
    reserve: usize,
}

impl Enumerator {
    fn new(pres: &Presentation, limits: EnumerationLimits) -> Self {
        let ngens = pres.num_generators();
        let ncols = 2 * ngens;
        let relators: Vec<Vec<u32>> =
            pres.relators().iter().map(|r| r.letters().iter().map(|&l| column(l) as u32).collect()).collect();
        let reserve = relators.iter().map(Vec::len).sum::<usize>() + ncols;
        let mut e = Enumerator {
            ncols,
            num_generators: ngens,
            table: Vec::new(),
            parent: Vec::new(),
            allocated: 0,
            live: 0,
            high_water: 0,
            limits,
            queue: Vec::new(),
            relators,
            reserve,
        };
        e.push_coset();
        e
    }

    fn push_coset(&mut self) -> u32 {
        let c = self.allocated as u32;
        if self.table.len() < (self.allocated + 1) * self.ncols {
            self.table.resize((self.allocated + 1) * self.ncols, NONE);
            self.parent.push(c);
        } else {
            self.table[self.allocated * self.ncols..(self.allocated + 1) * self.ncols].fill(NONE);
            self.parent[self.allocated] = c;
        }
        self.allocated += 1;
        self.live += 1;
        self.high_water = self.high_water.max(self.allocated);
        c
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, d: u32) {
        self.table[c as usize * self.ncols + col as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: u32) -> Result<u32, EnumerationError> {
        if self.allocated >= self.limits.max_cosets {
            return Err(EnumerationError::LimitExceeded { high_water: self.high_water, limit: self.limits.max_cosets });
        }
        let d = self.push_coset();
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) -> Result<(), EnumerationError> {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return Ok(());
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        if self.queue.len() >= self.limits.max_deductions {
            return Err(EnumerationError::QueueOverflow { limit: self.limits.max_deductions });
        }
        self.queue.push(kill);
        Ok(())
    }

    fn coincidence(&mut self, a: u32, b: u32) -> Result<(), EnumerationError> {
        self.queue.clear();
        self.merge(a, b)?;
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.ncols as u32 {
                let d = self.get(dead, col);
                if d == NONE {
                    continue;
                }
                if self.get(d, col ^ 1) == dead {
                    self.set(d, col ^ 1, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_img = self.get(mu, col);
                if mu_img != NONE {
                    self.merge(nu, mu_img)?;
                } else {
                    let nu_img = self.get(nu, col ^ 1);
                    if nu_img != NONE {
                        self.merge(mu, nu_img)?;
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
        Ok(())
    }

    fn scan_and_fill(&mut self, alpha: u32, rel: usize) -> Result<(), EnumerationError> {
        let len = self.relators[rel].len();
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = len; // exclusive upper end of the unscanned part
        loop {
            while i < j {
                let col = self.relators[rel][i];
                let next = self.get(f, col);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b)?;
                }
                return Ok(());
            }
            while j > i {
                let col = self.relators[rel][j - 1] ^ 1;
                let next = self.get(b, col);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b)?;
                return Ok(());
            }
            if j == i + 1 {
                // one gap left: a deduction closes the relator
                let col = self.relators[rel][i];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            let col = self.relators[rel][i];
            self.define(f, col)?;
        }
    }

    fn run(&mut self) -> Result<(), EnumerationError> {
        let mut alpha = 0u32;
        while (alpha as usize) < self.allocated {
            if self.is_live(alpha) {
                for r in 0..self.relators.len() {
                    self.scan_and_fill(alpha, r)?;
                    if !self.is_live(alpha) {
                        break;
                    }
                }
                if self.is_live(alpha) {
                    for col in 0..self.ncols as u32 {
                        if self.get(alpha, col) == NONE {
                            self.define(alpha, col)?;
                        }
                    }
                }
            }
            alpha += 1;
            if self.live < self.allocated && self.allocated + self.reserve > self.limits.max_cosets {
                alpha = self.compact(alpha);
            }
        }
        Ok(())
    }

    /// Renumbers live cosets in order; returns the new position of `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let mut new_index = vec![NONE; self.allocated];
        let mut n = 0u32;
        let mut new_cursor = None;
        for c in 0..self.allocated as u32 {
            if c == cursor {
                new_cursor = Some(n);
            }
            if self.is_live(c) {
                new_index[c as usize] = n;
                n += 1;
            }
        }
        let new_cursor = new_cursor.unwrap_or(n);
        for c in 0..self.allocated as u32 {
            let target = new_index[c as usize];
            if target == NONE {
                continue;
            }
            for col in 0..self.ncols as u32 {
                let d = self.get(c, col);
                let mapped = if d == NONE { NONE } else { new_index[self.rep(d) as usize] };
                self.set(target, col, mapped);
            }
        }
        self.allocated = n as usize;
        self.live = n as usize;
        self.table.truncate(self.allocated * self.ncols);
        self.parent.truncate(self.allocated);
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        new_cursor
    }

    fn finish(mut self) -> CosetTable {
        self.compact(0);
        CosetTable { num_generators: self.num_generators, n_cosets: self.allocated, table: self.table }
    }
}
