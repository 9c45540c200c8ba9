//! Backtracking search for all gyrogroups of a given order up to isomorphism.
//!
//! Every gyrogroup relabels to one with identity 0, so the search fixes row
//! and column 0 and fills the remaining cells in row-major order. A partial
//! grid is pruned when it breaks the Latin property (row/column bitmasks),
//! pairs inverses asymmetrically (`r ⊕ c = 0` forces `c ⊕ r = 0`), or
//! violates a left gyroassociativity or left loop instance all of whose
//! cells are already determined. Completed grids get the full exhaustive
//! verification (which adds the automorphism law), then are deduplicated by
//! canonical form.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{canonical_form, verify_gyrogroup, CayleyTable, FiniteError};

pub const DEFAULT_MAX_SEARCH_ORDER: usize = 6;
pub const HARD_MAX_SEARCH_ORDER: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Node budget: a node is one accepted cell placement. The search stops
    /// early (with `complete = false`) once the budget is spent.
    pub max_nodes: u64,
    /// Worker threads. Results of a completed search do not depend on this.
    pub jobs: usize,
    /// Permit orders 7 and 8, which can take a long time without a budget.
    pub allow_large: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_nodes: u64::MAX, jobs: 1, allow_large: false }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub order: usize,
    /// Canonical forms, sorted; one per isomorphism class.
    pub tables: Vec<CayleyTable>,
    /// False when the node budget ran out; `tables` is then a lower bound
    /// and, under several jobs, may depend on scheduling.
    pub complete: bool,
    pub nodes: u64,
}

struct Ctx {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: u64,
}

#[derive(Clone, Copy, PartialEq)]
enum Tri {
    Holds,
    Violated,
    Unknown,
}

#[derive(Clone)]
struct State {
    n: usize,
    /// Row-major cells, -1 for unset.
    grid: Vec<i16>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    /// `inv[r] = c` once `r ⊕ c = 0` is known (directly or by symmetry).
    inv: Vec<i16>,
    /// Instances of the two pruned laws already known to hold, as bitsets
    /// over `(x·n + y)·n + z`.
    g3_done: Vec<u64>,
    g4_done: Vec<u64>,
    g3_trail: Vec<u32>,
    g4_trail: Vec<u32>,
}

struct Undo {
    r: usize,
    c: usize,
    v: u8,
    set_inv_r: bool,
    set_inv_c: bool,
    cp3: usize,
    cp4: usize,
}

impl State {
    fn initial(n: usize) -> State {
        let mut grid = vec![-1i16; n * n];
        let mut row_used = vec![0u64; n];
        let mut col_used = vec![0u64; n];
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for x in 0..n {
            grid[x] = x as i16; // row 0
            grid[x * n] = x as i16; // column 0
            row_used[x] = 1 << x;
            col_used[x] = 1 << x;
        }
        row_used[0] = full;
        col_used[0] = full;
        let mut inv = vec![-1i16; n];
        inv[0] = 0;
        let words = n * n * n / 64 + 1;
        let mut st = State {
            n,
            grid,
            row_used,
            col_used,
            inv,
            g3_done: vec![0; words],
            g4_done: vec![0; words],
            g3_trail: Vec::new(),
            g4_trail: Vec::new(),
        };
        // Instances decided by the identity borders alone always hold.
        let ok = st.sweep();
        debug_assert!(ok);
        st.g3_trail.clear();
        st.g4_trail.clear();
        st
    }

    #[inline]
    fn cell(&self, a: usize, b: usize) -> i16 {
        self.grid[a * self.n + b]
    }

    fn eval_g3(&self, x: usize, y: usize, z: usize) -> Tri {
        let yz = self.cell(y, z);
        if yz < 0 {
            return Tri::Unknown;
        }
        let lhs = self.cell(x, yz as usize);
        if lhs < 0 {
            return Tri::Unknown;
        }
        let xy = self.cell(x, y);
        if xy < 0 {
            return Tri::Unknown;
        }
        let iv = self.inv[xy as usize];
        if iv < 0 {
            return Tri::Unknown;
        }
        // gyr[x, y](z) = ⊖(x⊕y) ⊕ (x ⊕ (y⊕z)) and the inner sum is lhs.
        let gy = self.cell(iv as usize, lhs as usize);
        if gy < 0 {
            return Tri::Unknown;
        }
        let rhs = self.cell(xy as usize, gy as usize);
        if rhs < 0 {
            return Tri::Unknown;
        }
        if lhs == rhs {
            Tri::Holds
        } else {
            Tri::Violated
        }
    }

    fn gyr_val(&self, a: usize, b: usize, z: usize) -> i16 {
        let bz = self.cell(b, z);
        if bz < 0 {
            return -1;
        }
        let abz = self.cell(a, bz as usize);
        if abz < 0 {
            return -1;
        }
        let ab = self.cell(a, b);
        if ab < 0 {
            return -1;
        }
        let iv = self.inv[ab as usize];
        if iv < 0 {
            return -1;
        }
        self.cell(iv as usize, abz as usize)
    }

    fn eval_g4(&self, x: usize, y: usize, z: usize) -> Tri {
        let xy = self.cell(x, y);
        if xy < 0 {
            return Tri::Unknown;
        }
        let lhs = self.gyr_val(xy as usize, y, z);
        if lhs < 0 {
            return Tri::Unknown;
        }
        let rhs = self.gyr_val(x, y, z);
        if rhs < 0 {
            return Tri::Unknown;
        }
        if lhs == rhs {
            Tri::Holds
        } else {
            Tri::Violated
        }
    }

    /// Evaluates every undecided instance of the two pruned laws; marks the
    /// ones that now hold, fails on the first violation.
    fn sweep(&mut self) -> bool {
        let total = self.n * self.n * self.n;
        for id in 0..total {
            if self.g3_done[id / 64] >> (id % 64) & 1 == 1 {
                continue;
            }
            let z = id % self.n;
            let y = id / self.n % self.n;
            let x = id / (self.n * self.n);
            match self.eval_g3(x, y, z) {
                Tri::Violated => return false,
                Tri::Holds => {
                    self.g3_done[id / 64] |= 1 << (id % 64);
                    self.g3_trail.push(id as u32);
                }
                Tri::Unknown => {}
            }
        }
        for id in 0..total {
            if self.g4_done[id / 64] >> (id % 64) & 1 == 1 {
                continue;
            }
            let z = id % self.n;
            let y = id / self.n % self.n;
            let x = id / (self.n * self.n);
            match self.eval_g4(x, y, z) {
                Tri::Violated => return false,
                Tri::Holds => {
                    self.g4_done[id / 64] |= 1 << (id % 64);
                    self.g4_trail.push(id as u32);
                }
                Tri::Unknown => {}
            }
        }
        true
    }

    fn place(&mut self, r: usize, c: usize, v: usize) -> Option<Undo> {
        // Inverse pairing: zeros come in transposed pairs and agree with
        // whatever inverse facts are already on record.
        if v == 0 {
            if self.inv[r] >= 0 && self.inv[r] != c as i16 {
                return None;
            }
            if self.inv[c] >= 0 && self.inv[c] != r as i16 {
                return None;
            }
            let t = self.cell(c, r);
            if t > 0 {
                return None;
            }
        } else {
            if self.inv[r] == c as i16 || self.inv[c] == r as i16 {
                return None;
            }
            if self.cell(c, r) == 0 {
                return None;
            }
        }
        let mut u = Undo {
            r,
            c,
            v: v as u8,
            set_inv_r: false,
            set_inv_c: false,
            cp3: self.g3_trail.len(),
            cp4: self.g4_trail.len(),
        };
        self.grid[r * self.n + c] = v as i16;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
        if v == 0 {
            if self.inv[r] < 0 {
                self.inv[r] = c as i16;
                u.set_inv_r = true;
            }
            if self.inv[c] < 0 {
                self.inv[c] = r as i16;
                u.set_inv_c = true;
            }
        }
        if self.sweep() {
            Some(u)
        } else {
            self.unplace(&u);
            None
        }
    }

    fn unplace(&mut self, u: &Undo) {
        while self.g3_trail.len() > u.cp3 {
            let id = self.g3_trail.pop().unwrap() as usize;
            self.g3_done[id / 64] &= !(1 << (id % 64));
        }
        while self.g4_trail.len() > u.cp4 {
            let id = self.g4_trail.pop().unwrap() as usize;
            self.g4_done[id / 64] &= !(1 << (id % 64));
        }
        if u.set_inv_r {
            self.inv[u.r] = -1;
        }
        if u.set_inv_c {
            self.inv[u.c] = -1;
        }
        self.grid[u.r * self.n + u.c] = -1;
        self.row_used[u.r] &= !(1u64 << u.v);
        self.col_used[u.c] &= !(1u64 << u.v);
    }

    fn to_table(&self) -> CayleyTable {
        CayleyTable { n: self.n, cells: self.grid.iter().map(|&v| v as u8).collect() }
    }
}

fn dfs(st: &mut State, cells: &[(usize, usize)], idx: usize, ctx: &Ctx, out: &mut Vec<CayleyTable>) {
    if ctx.exhausted.load(Ordering::Relaxed) {
        return;
    }
    if idx == cells.len() {
        let t = st.to_table();
        if verify_gyrogroup(&t).passed {
            out.push(t);
        }
        return;
    }
    let (r, c) = cells[idx];
    let used = st.row_used[r] | st.col_used[c];
    for v in 0..st.n {
        if used >> v & 1 == 1 {
            continue;
        }
        if let Some(u) = st.place(r, c, v) {
            let nodes = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if nodes > ctx.max_nodes {
                ctx.exhausted.store(true, Ordering::Relaxed);
                st.unplace(&u);
                return;
            }
            dfs(st, cells, idx + 1, ctx, out);
            st.unplace(&u);
            if ctx.exhausted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Like `dfs` but stops at `depth` and snapshots the state, yielding the
/// subtree roots handed to worker threads.
fn collect_prefixes(
    st: &mut State,
    cells: &[(usize, usize)],
    depth: usize,
    idx: usize,
    ctx: &Ctx,
    out: &mut Vec<State>,
) {
    if ctx.exhausted.load(Ordering::Relaxed) {
        return;
    }
    if idx == depth {
        out.push(st.clone());
        return;
    }
    let (r, c) = cells[idx];
    let used = st.row_used[r] | st.col_used[c];
    for v in 0..st.n {
        if used >> v & 1 == 1 {
            continue;
        }
        if let Some(u) = st.place(r, c, v) {
            let nodes = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if nodes > ctx.max_nodes {
                ctx.exhausted.store(true, Ordering::Relaxed);
                st.unplace(&u);
                return;
            }
            collect_prefixes(st, cells, depth, idx + 1, ctx, out);
            st.unplace(&u);
            if ctx.exhausted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// All gyrogroups of order `n` up to isomorphism.
///
/// The returned tables are canonical forms (identity 0, lexicographically
/// minimal under relabeling), sorted, so the output of a completed search is
/// identical regardless of `jobs`, and canonicalizing the output reproduces
/// it unchanged. Orders above [`DEFAULT_MAX_SEARCH_ORDER`] need
/// `allow_large`; the hard cap is [`HARD_MAX_SEARCH_ORDER`].
pub fn search_gyrogroups(n: usize, opts: SearchOptions) -> Result<SearchOutcome, FiniteError> {
    if n == 0 {
        return Err(FiniteError::EmptyTable);
    }
    let cap = if opts.allow_large { HARD_MAX_SEARCH_ORDER } else { DEFAULT_MAX_SEARCH_ORDER };
    if n > cap {
        return Err(FiniteError::OrderTooLarge { order: n, max: cap });
    }
    let ctx = Ctx {
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        max_nodes: opts.max_nodes,
    };
    let cells: Vec<(usize, usize)> =
        (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    let mut st = State::initial(n);
    let jobs = opts.jobs.max(1);
    let raw: Vec<CayleyTable> = if jobs == 1 || n <= 2 {
        let mut found = Vec::new();
        dfs(&mut st, &cells, 0, &ctx, &mut found);
        found
    } else {
        // Split below the first free row; each completion of row 1 roots a
        // subtree.
        let depth = n - 1;
        let mut prefixes = Vec::new();
        collect_prefixes(&mut st, &cells, depth, 0, &ctx, &mut prefixes);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("failed to build search thread pool");
        pool.install(|| {
            prefixes
                .into_par_iter()
                .map(|mut s| {
                    let mut found = Vec::new();
                    dfs(&mut s, &cells, depth, &ctx, &mut found);
                    found
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
    };
    let mut canon = BTreeSet::new();
    for t in &raw {
        canon.insert(canonical_form(t)?);
    }
    Ok(SearchOutcome {
        order: n,
        tables: canon.into_iter().collect(),
        complete: !ctx.exhausted.load(Ordering::Relaxed),
        nodes: ctx.nodes.load(Ordering::Relaxed),
    })
}
