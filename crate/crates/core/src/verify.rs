//! Verification suites: structural theorems and conjectures checked over
//! graph catalogs, with deterministic reports.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::catalog::{canonical_catalog, curated, random_catalog, random_graph, CatalogItem};
use crate::combinatorial::{globally_rigid_2, stress_linked_1, stress_linked_2, verify_witness};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::{glue, is_k_connected, t_sum, two_connected_components, Edge, Graph};
use crate::matrix::RowReducer;
use crate::matroid::{next_combination, Matroid, UnionFind};
use crate::pebble::pebble_rank_2;
use crate::rigidity::{
    bridges, is_circuit, is_linked, is_rigid, m_components, rank_d, rigid_rank, rigidity_matrix, rigidity_oracle,
    trivial_dim, Framework,
};
use crate::rng::{derive_seed, Rng};
use crate::stress::{gauss_fiber, is_globally_rigid, is_stress_linked, shared_nullity_at, stress_linked_via_gauss};
use crate::stress_matroid::{affine_matroid_oracle, stress_matroid_oracle};

pub const SUITES: &[&str] = &[
    "lowdim",
    "stress1",
    "stressmatroid",
    "duality",
    "banana",
    "tsum",
    "connelly",
    "sparsity",
    "gluing",
    "bridge",
    "gauss",
    "affine-conj",
    "mcomp-conj",
];

/// Offset separating the random-catalog streams from per-item streams.
const CATALOG_STREAM: u64 = 1 << 40;

/// Cap on the number of subsets tested exhaustively by the affine scan.
const AFFINE_SUBSET_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A conjecture counterexample: reported, but not a failure.
    Finding,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One checked query on one graph.
#[derive(Clone, Debug)]
pub struct Item {
    pub graph_id: String,
    pub query: String,
    pub args: String,
    pub value: String,
    pub witness: String,
    pub status: Status,
    pub graph: Graph,
}

impl Item {
    fn new(graph_id: &str, graph: &Graph, query: &str, args: String, value: String, status: Status) -> Item {
        Item {
            graph_id: graph_id.to_string(),
            query: query.to_string(),
            args,
            value,
            witness: String::new(),
            status,
            graph: graph.clone(),
        }
    }

    fn with_witness(mut self, witness: String) -> Item {
        self.witness = witness;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub reps: usize,
    pub items: Vec<Item>,
    /// Suite-level `key: value` lines.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, reps: usize) -> Report {
        Report {
            command: command.into(),
            seed,
            reps,
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|it| it.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `key: value` header lines followed by one `item:` line per item.
    /// Items that did not pass carry their graph in compact edge-list form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "reps: {}", self.reps);
        let _ = writeln!(out, "items: {}", self.items.len());
        let _ = writeln!(out, "passed: {}", self.count(Status::Pass));
        let _ = writeln!(out, "failed: {}", self.count(Status::Fail));
        let _ = writeln!(out, "findings: {}", self.count(Status::Finding));
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k}: {v}");
        }
        for it in &self.items {
            let _ = write!(out, "item: {} {} {} [{}] {}", it.status.label(), it.graph_id, it.query, it.args, it.value);
            if !it.witness.is_empty() {
                let _ = write!(out, " witness={}", it.witness);
            }
            if it.status != Status::Pass {
                let _ = write!(out, " graph={}", it.graph.to_compact());
            }
            out.push('\n');
        }
        out
    }

    /// One tab-separated line per item: graph_id, query, args, value, witness.
    /// Suite items prefix the value with their status.
    pub fn to_records(&self, with_status: bool) -> String {
        let mut out = String::new();
        for it in &self.items {
            let value = if with_status {
                format!("{} {}", it.status.label(), it.value)
            } else {
                it.value.clone()
            };
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", it.graph_id, it.query, it.args, value, it.witness);
        }
        out
    }

    /// Writes every item that did not pass as an edge-list file with a
    /// commented header. Returns the number of files written.
    pub fn write_counterexamples(&self, dir: &Path) -> Result<usize> {
        std::fs::create_dir_all(dir)?;
        let mut written = 0;
        for it in self.items.iter().filter(|it| it.status != Status::Pass) {
            let name: String = format!("{}-{}.g", it.graph_id, it.query)
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
                .collect();
            let mut text = String::new();
            let _ = writeln!(text, "# command: {}", self.command);
            let _ = writeln!(text, "# seed: {}", self.seed);
            let _ = writeln!(text, "# status: {}", it.status.label());
            let _ = writeln!(text, "# query: {} [{}]", it.query, it.args);
            let _ = writeln!(text, "# value: {}", it.value);
            if !it.witness.is_empty() {
                let _ = writeln!(text, "# witness: {}", it.witness);
            }
            text.push_str(&it.graph.to_edge_list());
            std::fs::write(dir.join(name), text)?;
            written += 1;
        }
        Ok(written)
    }
}

/// Suite parameters; `None` selects the suite's default.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub d: Option<usize>,
    pub n_max: Option<usize>,
    pub random: Option<usize>,
    pub seed: u64,
    pub reps: usize,
}

impl SuiteParams {
    pub fn new(seed: u64, reps: usize) -> SuiteParams {
        SuiteParams {
            d: None,
            n_max: None,
            random: None,
            seed,
            reps,
        }
    }
}

fn invalid(suite: &str, reason: impl Into<String>) -> Error {
    Error::InvalidSuiteParameter {
        suite: suite.to_string(),
        reason: reason.into(),
    }
}

fn dims(suite: &str, p: &SuiteParams, allowed: &[usize]) -> Result<Vec<usize>> {
    match p.d {
        None => Ok(allowed.to_vec()),
        Some(d) if allowed.contains(&d) => Ok(vec![d]),
        Some(d) => Err(invalid(suite, format!("d = {d} not in {allowed:?}"))),
    }
}

/// Dimension for the `i`-th randomly generated item.
fn cycle_dim(p: &SuiteParams, choices: &[usize], i: usize) -> usize {
    p.d.unwrap_or(choices[i % choices.len()])
}

/// Runs `f` on every input in parallel with the stream `seed ^ index`,
/// concatenating the items in input order.
fn run_items<T: Sync>(inputs: &[T], seed: u64, f: impl Fn(usize, &T, &mut Rng) -> Result<Vec<Item>> + Sync) -> Result<Vec<Item>> {
    let nested: Vec<Vec<Item>> = inputs
        .par_iter()
        .enumerate()
        .map(|(i, x)| f(i, x, &mut Rng::new(derive_seed(seed, i as u64))))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

pub fn run_suite(name: &str, command: &str, p: &SuiteParams) -> Result<Report> {
    let mut report = Report::new(command, p.seed, p.reps);
    let (items, notes) = match name {
        "lowdim" => lowdim(p)?,
        "stress1" => stress1(p)?,
        "stressmatroid" => stressmatroid(p)?,
        "duality" => duality(p)?,
        "banana" => banana(p)?,
        "tsum" => tsum(p)?,
        "connelly" => connelly(p)?,
        "sparsity" => sparsity(p)?,
        "gluing" => gluing(p)?,
        "bridge" => bridge(p)?,
        "gauss" => gauss(p)?,
        "affine-conj" => affine_conj(p)?,
        "mcomp-conj" => mcomp_conj(p)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    report.items = items;
    report.notes = notes;
    Ok(report)
}

type SuiteOutput = (Vec<Item>, Vec<(String, String)>);

fn nonadjacent_pairs(g: &Graph) -> Vec<Edge> {
    let n = g.vertex_count();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect()
}

fn d_args(d: usize) -> String {
    format!("d={d}")
}

fn edge_names(g: &Graph, edges: &[usize]) -> String {
    edges.iter().map(|&i| format!("{}-{}", g.edge(i).0, g.edge(i).1)).collect::<Vec<_>>().join(",")
}

fn lowdim(p: &SuiteParams) -> Result<SuiteOutput> {
    let n_max = p.n_max.unwrap_or(6);
    let random = p.random.unwrap_or(0);
    let mut items = Vec::new();
    let mut notes = Vec::new();
    for d in dims("lowdim", p, &[1, 2])? {
        let random_n_max = if d == 1 { 9 } else { 8 };
        let mut catalog = canonical_catalog(2, n_max);
        catalog.extend(curated(d));
        catalog.extend(random_catalog(random, 4, random_n_max, derive_seed(p.seed, CATALOG_STREAM + d as u64)));
        notes.push((format!("catalog-d{d}"), format!("{} graphs (canonical n <= {n_max}, curated, {random} random n <= {random_n_max})", catalog.len())));
        items.extend(run_items(&catalog, derive_seed(p.seed, d as u64 * CATALOG_STREAM), |_, it, rng| {
            if d == 1 {
                lowdim_1(it, rng, p.reps)
            } else {
                lowdim_2(it, rng, p.reps)
            }
        })?);
    }
    Ok((items, notes))
}

fn lowdim_1(it: &CatalogItem, rng: &mut Rng, reps: usize) -> Result<Vec<Item>> {
    let g = &it.graph;
    let pairs = nonadjacent_pairs(g);
    let mut agree = 0;
    let mut first_disagreement = String::new();
    for &(u, v) in &pairs {
        let algebraic = is_stress_linked(g, u, v, 1, rng, reps)?;
        let combinatorial = stress_linked_1(g, u, v)?;
        if algebraic == combinatorial {
            agree += 1;
        } else if first_disagreement.is_empty() {
            first_disagreement = format!("{u}-{v}:algebraic={algebraic},connectivity={combinatorial}");
        }
    }
    let status = Status::of(agree == pairs.len());
    Ok(vec![Item::new(&it.id, g, "stress-linked", d_args(1), format!("agree={agree}/{}", pairs.len()), status).with_witness(first_disagreement)])
}

fn lowdim_2(it: &CatalogItem, rng: &mut Rng, reps: usize) -> Result<Vec<Item>> {
    let g = &it.graph;
    let pairs = nonadjacent_pairs(g);
    let (mut agree, mut linked, mut verified) = (0, 0, 0);
    let mut first_problem = String::new();
    for &(u, v) in &pairs {
        let algebraic = is_stress_linked(g, u, v, 2, rng, reps)?;
        let combinatorial = stress_linked_2(g, u, v)?;
        if algebraic == combinatorial.linked {
            agree += 1;
        } else if first_problem.is_empty() {
            first_problem = format!("{u}-{v}:algebraic={algebraic},combinatorial={}", combinatorial.linked);
        }
        if let Some(h) = &combinatorial.witness {
            linked += 1;
            if verify_witness(g, u, v, h) {
                verified += 1;
            } else if first_problem.is_empty() {
                first_problem = format!("{u}-{v}:witness rejected");
            }
        }
    }
    let pair_item = Item::new(
        &it.id,
        g,
        "stress-linked",
        d_args(2),
        format!("agree={agree}/{} witnesses={verified}/{linked}", pairs.len()),
        Status::of(agree == pairs.len() && verified == linked),
    )
    .with_witness(first_problem);

    let algebraic = is_globally_rigid(g, 2, rng, reps)?;
    let structural = if g.vertex_count() <= 3 {
        g.is_complete()
    } else {
        is_k_connected(g, 3) && m_components(g, 2, rng, reps)?.len() == 1
    };
    let pebble = globally_rigid_2(g);
    let gr_item = Item::new(
        &it.id,
        g,
        "globally-rigid",
        d_args(2),
        format!("algebraic={algebraic} structural={structural} pebble={pebble}"),
        Status::of(algebraic == structural && structural == pebble),
    );

    let random_rank = rank_d(g, 2, rng, reps)?;
    let pebble_rank = pebble_rank_2(g);
    let rank_item = Item::new(
        &it.id,
        g,
        "rank",
        d_args(2),
        format!("random={random_rank} pebble={pebble_rank}"),
        Status::of(random_rank == pebble_rank),
    );
    Ok(vec![pair_item, gr_item, rank_item])
}

/// Depth-first search over the sets independent in both a represented
/// matroid and a closed form. A minimal set independent in exactly one of
/// them extends a set independent in both by its largest element, so the
/// search finds it whenever one exists.
struct SubsetSearch<'a> {
    rows: &'a [Vec<crate::field::Fp>],
    closed_form: &'a dyn Fn(&[usize]) -> bool,
    visited: usize,
    mismatch: Option<Vec<usize>>,
}

impl SubsetSearch<'_> {
    fn run(&mut self, start: usize, set: &mut Vec<usize>, reducer: &RowReducer) {
        for e in start..self.rows.len() {
            if self.mismatch.is_some() {
                return;
            }
            set.push(e);
            self.visited += 1;
            let closed = (self.closed_form)(set);
            let represented = !reducer.contains(&self.rows[e]);
            if closed != represented {
                self.mismatch = Some(set.clone());
            } else if closed {
                let mut next = reducer.clone();
                next.insert(&self.rows[e]);
                self.run(e + 1, set, &next);
            }
            set.pop();
        }
    }
}

fn stress1(p: &SuiteParams) -> Result<SuiteOutput> {
    if p.d.is_some_and(|d| d != 1) {
        return Err(invalid("stress1", "the closed form is stated for d = 1"));
    }
    let n_max = p.n_max.unwrap_or(7);
    let catalog = canonical_catalog(2, n_max);
    let notes = vec![("catalog".to_string(), format!("{} canonical graphs, n <= {n_max}", catalog.len()))];
    let items = run_items(&catalog, p.seed, |_, it, rng| {
        let g = &it.graph;
        let blocks = two_connected_components(g);
        let mut block_of = vec![0; g.edge_count()];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                block_of[e] = b;
            }
        }
        let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        let closed_form = |set: &[usize]| {
            let mut counts = vec![0; sizes.len()];
            set.iter().all(|&e| {
                counts[block_of[e]] += 1;
                counts[block_of[e]] < sizes[block_of[e]]
            })
        };
        let oracle = stress_matroid_oracle(g, 1, rng, p.reps)?;
        let rep = oracle.representation();
        let rows: Vec<Vec<crate::field::Fp>> = (0..rep.rows()).map(|r| rep.row(r).to_vec()).collect();
        let mut search = SubsetSearch {
            rows: &rows,
            closed_form: &closed_form,
            visited: 0,
            mismatch: None,
        };
        search.run(0, &mut Vec::new(), &RowReducer::new(rep.cols()));
        if let Some(set) = &search.mismatch {
            if oracle.is_independent(set) == closed_form(set) {
                return Err(Error::Inconsistent("stress matroid representations disagree".into()));
            }
        }
        let closed_rank: usize = sizes.iter().map(|s| s - 1).sum();
        let rank_ok = oracle.rank() == closed_rank;
        let status = Status::of(search.mismatch.is_none() && rank_ok);
        let witness = search.mismatch.map(|s| format!("set={}", edge_names(g, &s))).unwrap_or_default();
        Ok(vec![Item::new(
            &it.id,
            g,
            "stress-matroid-closed-form",
            d_args(1),
            format!("blocks={} rank={} sets={}", blocks.len(), oracle.rank(), search.visited),
            status,
        )
        .with_witness(witness)])
    })?;
    Ok((items, notes))
}

fn is_forest(g: &Graph, edges: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    edges.iter().all(|&e| {
        let (u, v) = g.edge(e);
        let fresh = uf.find(u) != uf.find(v);
        uf.union(u, v);
        fresh
    })
}

fn span(g: &Graph, edges: &[usize]) -> usize {
    let mut vs: Vec<usize> = edges.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs.len()
}

/// All subsets of `pool` with `1..=k` elements.
fn subsets_up_to(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=k.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| pool[i]).collect());
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    out
}

fn stressmatroid(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(200);
    if p.d.is_some() {
        dims("stressmatroid", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[2, 3], i);
        let g = crate::catalog::random_sample(4, 8, rng);
        let id = format!("r{i}");
        let oracle = stress_matroid_oracle(&g, d, rng, p.reps)?;
        let bridge_set = bridges(&g, d, rng, p.reps)?;
        let loops = oracle.loops();
        let loops_item = Item::new(&id, &g, "loops-are-bridges", d_args(d), format!("loops={} bridges={}", loops.len(), bridge_set.len()), Status::of(loops == bridge_set))
            .with_witness(if loops == bridge_set { String::new() } else { format!("loops={} bridges={}", edge_names(&g, &loops), edge_names(&g, &bridge_set)) });

        let pairs: Vec<Vec<usize>> = oracle.circuits_up_to(2)?.into_iter().filter(|c| c.len() == 2).collect();
        let pairs_item = Item::new(&id, &g, "no-two-circuits", d_args(d), format!("two-circuits={}", pairs.len()), Status::of(pairs.is_empty()))
            .with_witness(pairs.first().map(|c| edge_names(&g, c)).unwrap_or_default());

        let ours = oracle.components()?;
        let rigidity = m_components(&g, d, rng, p.reps)?;
        let comp_item = Item::new(&id, &g, "components", d_args(d), format!("stress={} rigidity={}", ours.len(), rigidity.len()), Status::of(ours == rigidity));

        let non_bridges: Vec<usize> = (0..g.edge_count()).filter(|e| !bridge_set.contains(e)).collect();
        let mut candidates: Vec<Vec<usize>> = subsets_up_to(&non_bridges, d).into_iter().filter(|s| span(&g, s) <= d + 1 && is_forest(&g, s)).collect();
        if d == 2 {
            for (a, &e) in non_bridges.iter().enumerate() {
                for &f in &non_bridges[a + 1..] {
                    if span(&g, &[e, f]) == 4 {
                        candidates.push(vec![e, f]);
                    }
                }
            }
        }
        let dependent: Vec<&Vec<usize>> = candidates.iter().filter(|s| !oracle.is_independent(s)).collect();
        let forest_item = Item::new(&id, &g, "forests-independent", d_args(d), format!("checked={} dependent={}", candidates.len(), dependent.len()), Status::of(dependent.is_empty()))
            .with_witness(dependent.first().map(|s| edge_names(&g, s)).unwrap_or_default());
        Ok(vec![loops_item, pairs_item, comp_item, forest_item])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random graphs, 4 <= n <= 8"))]))
}

fn random_subset(m: usize, size: usize, rng: &mut Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..m).collect();
    rng.shuffle(&mut all);
    all.truncate(size);
    all.sort_unstable();
    all
}

fn duality(p: &SuiteParams) -> Result<SuiteOutput> {
    let n_max = p.n_max.unwrap_or(6);
    let samples = 16;
    let mut items = Vec::new();
    let mut notes = Vec::new();
    for d in dims("duality", p, &[2, 3])? {
        let mut catalog = canonical_catalog(d + 2, n_max);
        catalog.extend(curated(d).into_iter().filter(|it| it.graph.vertex_count() >= d + 2));
        let found = run_items(&catalog, derive_seed(p.seed, d as u64 * CATALOG_STREAM), |_, it, rng| {
            let g = &it.graph;
            if !is_rigid(g, d, rng, p.reps)? {
                return Ok(Vec::new());
            }
            let m = g.edge_count();
            let r = trivial_dim(d);
            let stress = stress_matroid_oracle(g, d, rng, p.reps)?;
            let full = stress.rank() + r == m;
            let gr = is_globally_rigid(g, d, rng, p.reps)?;
            let rank_item = Item::new(&it.id, g, "rank-criterion", d_args(d), format!("stress-rank={} full={full} globally-rigid={gr}", stress.rank()), Status::of(full == gr));
            let affine = affine_matroid_oracle(g, d, rng, p.reps)?;
            let dual = stress.dual();
            let (mut checked, mut bad) = (0, Vec::new());
            for _ in 0..samples {
                let size = rng.below(1, r.min(m) + 1);
                let s = random_subset(m, size, rng);
                if affine.is_independent(&s) {
                    checked += 1;
                    if !dual.is_independent(&s) {
                        bad.push(s);
                    }
                }
            }
            let dual_item = Item::new(&it.id, g, "affine-independent-in-dual", d_args(d), format!("checked={checked} dependent={}", bad.len()), Status::of(bad.is_empty()))
                .with_witness(bad.first().map(|s| edge_names(g, s)).unwrap_or_default());
            Ok(vec![rank_item, dual_item])
        })?;
        notes.push((format!("rigid-d{d}"), format!("{} of {} catalog graphs with n >= {}", found.len() / 2, catalog.len(), d + 2)));
        items.extend(found);
    }
    Ok((items, notes))
}

fn banana(p: &SuiteParams) -> Result<SuiteOutput> {
    dims("banana", p, &[3])?;
    let g = families::double_banana(3);
    let mut rng = Rng::new(p.seed);
    let reps = p.reps;
    let id = "banana3";
    let rank = rank_d(&g, 3, &mut rng, reps)?;
    let rigid = is_rigid(&g, 3, &mut rng, reps)?;
    let circuit = is_circuit(&g, 3, &mut rng, reps)?;
    let linked = is_stress_linked(&g, 0, 1, 3, &mut rng, reps)?;
    let bridge_set = bridges(&g, 3, &mut rng, reps)?;
    let items = vec![
        Item::new(id, &g, "rank", d_args(3), rank.to_string(), Status::of(rank == 17)),
        Item::new(id, &g, "rigid", d_args(3), rigid.to_string(), Status::of(!rigid)),
        Item::new(id, &g, "circuit", d_args(3), circuit.to_string(), Status::of(circuit)),
        Item::new(id, &g, "stress-linked", "d=3 u=0 v=1".to_string(), linked.to_string(), Status::of(linked)),
        Item::new(id, &g, "bridges", d_args(3), format!("[{}]", edge_names(&g, &bridge_set)), Status::of(bridge_set.is_empty())),
    ];
    Ok((items, Vec::new()))
}

fn random_relabel(g: &Graph, marked: &[usize], rng: &mut Rng) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    rng.shuffle(&mut perm);
    (g.relabel(&perm), marked.iter().map(|&v| perm[v]).collect())
}

fn cliques(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if t > n {
        return out;
    }
    let mut s: Vec<usize> = (0..t).collect();
    loop {
        if s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b))) {
            out.push(s.clone());
        }
        if !next_combination(&mut s, n) {
            return out;
        }
    }
}

/// A rigidity circuit containing a complete subgraph on `t` vertices,
/// returned with that clique. Drawn as a fundamental circuit of a random
/// graph slightly above the rigidity threshold, falling back to `K_{d+2}`.
fn random_circuit(d: usize, t: usize, rng: &mut Rng, reps: usize) -> Result<(Graph, Vec<usize>)> {
    for _ in 0..32 {
        let n = rng.below(d + 2, d + 6);
        let max_m = n * (n - 1) / 2;
        let r = rigid_rank(n, d);
        if r + 1 > max_m {
            continue;
        }
        let m = rng.below(r + 1, (r + 4).min(max_m) + 1);
        let g = random_graph(n, m, rng);
        let oracle = rigidity_oracle(&g, d, rng, reps)?;
        let basis = oracle.basis();
        let outside: Vec<usize> = (0..m).filter(|e| !basis.contains(e)).collect();
        if outside.is_empty() {
            continue;
        }
        let e = outside[rng.below(0, outside.len())];
        let circuit = oracle.fundamental_circuit(&basis, e)?;
        let (c, _) = g.edge_induced(&circuit);
        let found = cliques(&c, t);
        if !found.is_empty() {
            let clique = found[rng.below(0, found.len())].clone();
            return Ok(random_relabel(&c, &clique, rng));
        }
    }
    let clique: Vec<usize> = (0..t).collect();
    Ok(random_relabel(&families::complete(d + 2), &clique, rng))
}

fn tsum(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(50);
    if p.d.is_some() {
        dims("tsum", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[2, 3], i);
        let t = rng.below(2, d + 2);
        let (g1, c1) = random_circuit(d, t, rng, p.reps)?;
        let (g2, mut c2) = random_circuit(d, t, rng, p.reps)?;
        rng.shuffle(&mut c2);
        let shared: Vec<(usize, usize)> = c1.iter().copied().zip(c2.iter().copied()).collect();
        let a = rng.below(0, t);
        let b = (a + rng.below(1, t)) % t;
        let e = (c1[a].min(c1[b]), c1[a].max(c1[b]));
        let sum = t_sum(&g1, &g2, &shared, e)?;
        let hypothesis = is_circuit(&g1, d, rng, p.reps)? && is_circuit(&g2, d, rng, p.reps)?;
        let circuit = is_circuit(&sum, d, rng, p.reps)?;
        let status = Status::of(hypothesis && circuit);
        let witness = if status == Status::Pass {
            String::new()
        } else {
            format!("G1={} G2={} hypothesis={hypothesis}", g1.to_compact(), g2.to_compact())
        };
        Ok(vec![Item::new(&format!("t{i}"), &sum, "tsum-circuit", format!("d={d} t={t}"), format!("circuit={circuit}"), status).with_witness(witness)])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random t-sums"))]))
}

fn is_redundantly_rigid(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    Ok(is_rigid(g, d, rng, reps)? && bridges(g, d, rng, reps)?.is_empty())
}

/// A random graph on at least `min_n` vertices satisfying `accept`,
/// falling back to `K_{d+2}`.
fn random_accepted(
    d: usize,
    min_n: usize,
    rng: &mut Rng,
    mut accept: impl FnMut(&Graph, &mut Rng) -> Result<bool>,
) -> Result<Graph> {
    for _ in 0..32 {
        let n = rng.below(min_n, min_n + 4);
        let max_m = n * (n - 1) / 2;
        let m = rng.below(rigid_rank(n, d).min(max_m), max_m + 1);
        let g = random_graph(n, m, rng);
        if accept(&g, rng)? {
            return Ok(g);
        }
    }
    Ok(families::complete(d + 2))
}

/// `k` distinct vertices of `g` starting with `first`, the rest random.
fn pick_vertices(g: &Graph, first: &[usize], k: usize, rng: &mut Rng) -> Vec<usize> {
    let mut rest: Vec<usize> = (0..g.vertex_count()).filter(|v| !first.contains(v)).collect();
    rng.shuffle(&mut rest);
    first.iter().copied().chain(rest).take(k).collect()
}

fn connelly(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(30);
    if p.d.is_some() {
        dims("connelly", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[2, 3], i);
        let reps = p.reps;
        let g1 = random_accepted(d, d + 2, rng, |g, r| is_redundantly_rigid(g, d, r, reps))?;
        let g2 = random_accepted(d, d + 2, rng, |g, r| is_redundantly_rigid(g, d, r, reps))?;
        let s = rng.below(d, d + 2);
        let e1 = g1.edge(rng.below(0, g1.edge_count()));
        let e2 = g2.edge(rng.below(0, g2.edge_count()));
        let s1 = pick_vertices(&g1, &[e1.0, e1.1], s, rng);
        let s2 = pick_vertices(&g2, &[e2.0, e2.1], s, rng);
        let shared: Vec<(usize, usize)> = s1.iter().copied().zip(s2.iter().copied()).collect();
        let (g, map2) = glue(&g1, &g2, &shared)?;
        let common: Vec<Edge> = g2
            .edges()
            .iter()
            .map(|&(a, b)| (map2[a].min(map2[b]), map2[a].max(map2[b])))
            .filter(|&(a, b)| g1.vertex_count() > a.max(b) && g1.has_edge(a, b))
            .collect();
        let mut ok = 0;
        let mut bad = Vec::new();
        for &(a, b) in &common {
            if is_redundantly_rigid(&g.without_edge(a, b), d, rng, reps)? {
                ok += 1;
            } else {
                bad.push(format!("{a}-{b}"));
            }
        }
        let hypothesis = is_redundantly_rigid(&g1, d, rng, reps)? && is_redundantly_rigid(&g2, d, rng, reps)?;
        Ok(vec![Item::new(
            &format!("g{i}"),
            &g,
            "redundantly-rigid-after-deletion",
            format!("d={d} shared={s}"),
            format!("common-edges={} redundantly-rigid={ok}", common.len()),
            Status::of(hypothesis && bad.is_empty() && !common.is_empty()),
        )
        .with_witness(bad.join(","))])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random gluings"))]))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sparsity(p: &SuiteParams) -> Result<SuiteOutput> {
    let d = p.d.unwrap_or(2);
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let n_max = p.n_max.unwrap_or(7);
    let reps = p.reps.max(2);
    let catalog = canonical_catalog(d + 2, n_max);
    let items = run_items(&catalog, p.seed, |_, it, rng| {
        let g = &it.graph;
        if !is_globally_rigid(g, d, rng, reps)? {
            return Ok(Vec::new());
        }
        for e in 0..g.edge_count() {
            if is_globally_rigid(&g.without_edge_index(e), d, rng, reps)? {
                return Ok(Vec::new());
            }
        }
        let n = g.vertex_count();
        let (mut checked, mut tight_sets, mut violations) = (0, 0, Vec::new());
        let mut whole_tight = false;
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size < d + 2 {
                continue;
            }
            let xs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let (h, _) = g.induced(&xs);
            let edges = h.edge_count();
            let first = rank_d(&h, d, rng, reps)? + size - d - 1;
            let second = (d + 1) * size - binom(d + 2, 2);
            let tight = edges == first;
            let is_k = size == d + 2 && h.is_complete();
            checked += 1;
            if tight {
                tight_sets += 1;
                if size == n {
                    whole_tight = true;
                }
            }
            if edges > first || first > second || tight != is_k {
                violations.push(format!("{{{}}}", xs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
            }
        }
        let mut item = Item::new(
            &it.id,
            g,
            "minimally-globally-rigid-sparsity",
            d_args(d),
            format!("n={n} m={} subsets={checked} tight={tight_sets} equality={whole_tight}", g.edge_count()),
            Status::of(violations.is_empty()),
        );
        item.witness = violations.into_iter().take(3).collect::<Vec<_>>().join(",");
        Ok(vec![item])
    })?;
    let equality: Vec<String> = items.iter().filter(|it| it.value.ends_with("equality=true")).map(|it| it.graph_id.clone()).collect();
    let expected_k = equality.iter().all(|id| {
        let g = &items.iter().find(|it| &it.graph_id == id).expect("listed").graph;
        g.vertex_count() == d + 2 && g.is_complete()
    });
    let notes = vec![
        ("catalog".to_string(), format!("{} canonical graphs, {} <= n <= {n_max}", catalog.len(), d + 2)),
        ("minimally-globally-rigid".to_string(), items.len().to_string()),
        ("equality-set".to_string(), format!("{{{}}}", equality.join(","))),
        ("equality-only-complete".to_string(), expected_k.to_string()),
    ];
    Ok((items, notes))
}

fn gluing(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(30);
    if p.d.is_some() {
        dims("gluing", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[2, 3], i);
        let reps = p.reps;
        let g1 = random_accepted(d, d + 2, rng, |g, r| is_rigid(g, d, r, reps))?;
        let g2 = random_accepted(d, d + 2, rng, |g, r| is_rigid(g, d, r, reps))?;
        let s = rng.below(2, d + 2);
        let s1 = pick_vertices(&g1, &[], s, rng);
        let s2 = pick_vertices(&g2, &[], s, rng);
        let shared: Vec<(usize, usize)> = s1.iter().copied().zip(s2.iter().copied()).collect();
        let (g, _) = glue(&g1, &g2, &shared)?;
        let mut hypothesis = true;
        let (mut pairs, mut ok, mut bad) = (0, 0, Vec::new());
        for a in 0..s {
            for b in a + 1..s {
                hypothesis &= is_linked(&g1, s1[a], s1[b], d, rng, reps)? && is_linked(&g2, s2[a], s2[b], d, rng, reps)?;
                pairs += 1;
                let (u, v) = (s1[a], s1[b]);
                if is_stress_linked(&g, u, v, d, rng, reps)? {
                    ok += 1;
                } else {
                    bad.push(format!("{u}-{v}"));
                }
            }
        }
        Ok(vec![Item::new(
            &format!("g{i}"),
            &g,
            "shared-pairs-stress-linked",
            format!("d={d} shared={s}"),
            format!("pairs={pairs} stress-linked={ok}"),
            Status::of(hypothesis && bad.is_empty()),
        )
        .with_witness(bad.join(","))])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random gluings of rigid graphs"))]))
}

fn bridge_edges(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<Vec<Edge>> {
    Ok(bridges(g, d, rng, reps)?.into_iter().map(|e| g.edge(e)).collect())
}

fn bridge(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(50);
    if p.d.is_some() {
        dims("bridge", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[2, 3], i);
        let reps = p.reps;
        let g = crate::catalog::random_sample(4, 8, rng);
        let base = bridge_edges(&g, d, rng, reps)?;
        let (mut linked, mut checks, mut bad) = (0, 0, Vec::new());
        for (u, v) in nonadjacent_pairs(&g) {
            if !is_stress_linked(&g, u, v, d, rng, reps)? {
                continue;
            }
            linked += 1;
            checks += 1;
            if bridge_edges(&g.with_edge(u, v), d, rng, reps)? != base {
                bad.push(format!("{u}-{v}:bridges-changed"));
            }
            for &(a, b) in &base {
                checks += 1;
                if !is_stress_linked(&g.without_edge(a, b), u, v, d, rng, reps)? {
                    bad.push(format!("{u}-{v}:lost-after-deleting-{a}-{b}"));
                }
            }
        }
        Ok(vec![Item::new(
            &format!("r{i}"),
            &g,
            "bridge-invariance",
            d_args(d),
            format!("bridges={} stress-linked-pairs={linked} checks={checks}", base.len()),
            Status::of(bad.is_empty()),
        )
        .with_witness(bad.join(","))])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random graphs, 4 <= n <= 8"))]))
}

fn gauss(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(200);
    if p.d.is_some() {
        dims("gauss", p, &[1, 2, 3, 4])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[1, 2, 3], i);
        let reps = p.reps;
        let g = crate::catalog::random_sample(4, 7, rng);
        let id = format!("r{i}");
        let f = Framework::random(&g, d, rng)?;
        let fiber = gauss_fiber(&f, rng)?.dim();
        let n = g.vertex_count();
        let formula = (d * shared_nullity_at(&f) + rigidity_matrix(&f).rank()) as i64 - (n * d) as i64;
        let fiber_item = Item::new(&id, &g, "gauss-fiber-dim", d_args(d), format!("fiber={fiber} formula={formula}"), Status::of(fiber as i64 == formula));
        let pairs = nonadjacent_pairs(&g);
        let (mut agree, mut bad) = (0, Vec::new());
        for &(u, v) in &pairs {
            let via_fiber = stress_linked_via_gauss(&g, u, v, d, rng, reps)?;
            let via_nullity = is_stress_linked(&g, u, v, d, rng, reps)?;
            if via_fiber == via_nullity {
                agree += 1;
            } else {
                bad.push(format!("{u}-{v}:fiber={via_fiber},nullity={via_nullity}"));
            }
        }
        let pair_item = Item::new(&id, &g, "gauss-pair-test", d_args(d), format!("agree={agree}/{}", pairs.len()), Status::of(bad.is_empty()))
            .with_witness(bad.join(","));
        Ok(vec![fiber_item, pair_item])
    })?;
    Ok((items, vec![("samples".to_string(), format!("{count} random graphs, 4 <= n <= 7"))]))
}

fn affine_conj(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(200);
    if p.d.is_some() {
        dims("affine-conj", p, &[1, 2, 3, 4, 5])?;
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let d = cycle_dim(p, &[1, 2, 3, 4], i);
        let r = trivial_dim(d);
        let lo = (4..).find(|&n| n * (n - 1) / 2 >= r && 3 * n >= r).expect("some n");
        let n = rng.below(lo, lo.max(8) + 1);
        let max_m = (3 * n).min(n * (n - 1) / 2);
        let m = rng.below(r, max_m + 1);
        let g = random_graph(n, m, rng);
        let oracle = affine_matroid_oracle(&g, d, rng, p.reps)?;
        let total = binom(m, r);
        let subsets: Vec<Vec<usize>> = if total <= AFFINE_SUBSET_CAP {
            let mut s: Vec<usize> = (0..r).collect();
            let mut all = Vec::with_capacity(total);
            loop {
                all.push(s.clone());
                if !next_combination(&mut s, m) {
                    break all;
                }
            }
        } else {
            (0..AFFINE_SUBSET_CAP).map(|_| random_subset(m, r, rng)).collect()
        };
        let dependent: Vec<&Vec<usize>> = subsets.iter().filter(|s| !oracle.is_independent(s)).collect();
        let mode = if total <= AFFINE_SUBSET_CAP { "exhaustive" } else { "sampled" };
        let uniform = oracle.rank() == r && dependent.is_empty();
        let status = if uniform { Status::Pass } else { Status::Finding };
        Ok(vec![Item::new(
            &format!("r{i}"),
            &g,
            "affine-uniform",
            d_args(d),
            format!("rank={} subsets={} dependent={} mode={mode}", oracle.rank(), subsets.len(), dependent.len()),
            status,
        )
        .with_witness(dependent.first().map(|s| edge_names(&g, s)).unwrap_or_default())])
    })?;
    let findings = items.iter().filter(|it| it.status == Status::Finding).count();
    Ok((items, vec![("scan".to_string(), "complete".to_string()), ("counterexamples".to_string(), findings.to_string())]))
}

fn mcomp_conj(p: &SuiteParams) -> Result<SuiteOutput> {
    let count = p.random.unwrap_or(200);
    let d = p.d.unwrap_or(2);
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let inputs: Vec<usize> = (0..count).collect();
    let items = run_items(&inputs, p.seed, |i, _, rng| {
        let reps = p.reps;
        let g = crate::catalog::random_sample(4, 8, rng);
        let components: Vec<(Graph, Vec<usize>)> = m_components(&g, d, rng, reps)?.iter().map(|c| g.edge_induced(c)).collect();
        let (mut linked, mut supported, mut unsupported) = (0, 0, Vec::new());
        for (u, v) in nonadjacent_pairs(&g) {
            if !is_stress_linked(&g, u, v, d, rng, reps)? {
                continue;
            }
            linked += 1;
            let mut found = false;
            for (h, map) in &components {
                let (Some(a), Some(b)) = (map.iter().position(|&x| x == u), map.iter().position(|&x| x == v)) else {
                    continue;
                };
                if is_stress_linked(h, a, b, d, rng, reps)? {
                    found = true;
                    break;
                }
            }
            if found {
                supported += 1;
            } else {
                unsupported.push(format!("{u}-{v}"));
            }
        }
        let status = if unsupported.is_empty() { Status::Pass } else { Status::Finding };
        Ok(vec![Item::new(
            &format!("r{i}"),
            &g,
            "component-supports-pair",
            d_args(d),
            format!("components={} stress-linked-pairs={linked} supported={supported}", components.len()),
            status,
        )
        .with_witness(unsupported.join(","))])
    })?;
    let findings = items.iter().filter(|it| it.status == Status::Finding).count();
    Ok((items, vec![("scan".to_string(), "complete".to_string()), ("counterexamples".to_string(), findings.to_string())]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(seed: u64) -> SuiteParams {
        SuiteParams::new(seed, 2)
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", "verify nope", &params(1)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn banana_suite_passes() {
        let r = run_suite("banana", "verify banana", &params(3)).unwrap();
        assert_eq!(r.items.len(), 5);
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn banana_rejects_other_dimensions() {
        let mut p = params(3);
        p.d = Some(2);
        assert!(matches!(run_suite("banana", "", &p), Err(Error::InvalidSuiteParameter { .. })));
    }

    #[test]
    fn small_tsum_run_is_reproducible() {
        let mut p = params(11);
        p.random = Some(4);
        let a = run_suite("tsum", "verify tsum", &p).unwrap();
        let b = run_suite("tsum", "verify tsum", &p).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert!(a.all_passed(), "{}", a.to_text());
        assert_eq!(a.items.len(), 4);
    }

    #[test]
    fn text_report_lists_failures_with_graphs() {
        let g = families::cycle(4);
        let mut r = Report::new("verify x", 1, 2);
        r.items.push(Item::new("c", &g, "q", "d=1".into(), "v".into(), Status::Fail));
        let text = r.to_text();
        assert!(text.contains("failed: 1"));
        assert!(text.contains("graph=p 4 4;0 1;0 3;1 2;2 3"));
        assert_eq!(r.to_records(true), "c\tq\td=1\tFAIL v\t\n");
    }

    #[test]
    fn counterexample_files_parse_back() {
        let dir = std::env::temp_dir().join(format!("rigidlink-cx-{}", std::process::id()));
        let g = families::wheel(4);
        let mut r = Report::new("verify x", 1, 2);
        r.items.push(Item::new("w4", &g, "q", String::new(), "v".into(), Status::Fail));
        r.items.push(Item::new("ok", &g, "q", String::new(), "v".into(), Status::Pass));
        assert_eq!(r.write_counterexamples(&dir).unwrap(), 1);
        let text = std::fs::read_to_string(dir.join("w4-q.g")).unwrap();
        assert_eq!(Graph::parse(&text).unwrap(), g);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn subset_search_finds_planted_mismatch() {
        use crate::field::Fp;
        // three parallel copies of one vector: a rank-one matroid
        let rows = vec![vec![Fp::ONE, Fp::ZERO]; 3];
        let uniform_two = |s: &[usize]| s.len() <= 2;
        let mut search = SubsetSearch {
            rows: &rows,
            closed_form: &uniform_two,
            visited: 0,
            mismatch: None,
        };
        search.run(0, &mut Vec::new(), &RowReducer::new(2));
        assert_eq!(search.mismatch, Some(vec![0, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(21, 10), 352_716);
    }
}
