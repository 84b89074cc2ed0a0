//! Plain-text job files and their execution.
//!
//! ```text
//! # comment
//! commutator left|right
//! group <name>
//!   gens <id>…
//!   rel <word>
//!   perm <id> <cycles>
//! map <name> <G> -> <H>
//!   <gen> -> <word-or-cycles>
//! task <kind> p=<prime> [e=<int>] [rounds=<int>] [maxdim=<int>] [modules=all|<i,j,…>] [seed=<hex>] [verify]
//! ```
//!
//! Indented lines belong to the preceding `group` or `map`. Words use the
//! syntax of [`crate::groups::parse_word`]; a map image is either cycle
//! notation or a word in the codomain's generators.

use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{cocycle_oracle, h2_basis, ParamRws, ORACLE_MAX_DIM, ORACLE_MAX_ORDER};
use crate::cover::{cover_ve, default_images, fox_wreath_failures, Target, WREATH_CAP};
use crate::error::{Error, Result};
use crate::finfield::Field;
use crate::groups::{
    eval_word, looks_like_cycles, parse_cycles, parse_word, CommutatorConvention, FiniteGroupData, Permutation,
    Presentation,
};
use crate::hybrid::{layer_components, schreier_kernel, Base, ModuleAction};
use crate::lift::{
    fixed_point_message, iterate_with, lift_by_module, semisimple_step, EpiState, ModuleFilter, RoundRecord,
};
use crate::modrep::{classify_simples, SimpleCatalog};
use crate::DEFAULT_SEED;

/// Random words per Fox identity check.
const FOX_WORDS: usize = 200;

/// Exit code for a parse or input error.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for a failed verification.
pub const EXIT_VERIFY: i32 = 3;
/// Exit code for an exceeded size limit.
pub const EXIT_LIMIT: i32 = 4;
/// Exit code for any other failure.
pub const EXIT_OTHER: i32 = 1;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => EXIT_PARSE,
        Error::Verification(_) => EXIT_VERIFY,
        Error::Limit(_) => EXIT_LIMIT,
        _ => EXIT_OTHER,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Simples,
    H2,
    Cover,
    Lift,
    Iterate,
}

impl TaskKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "simples" => TaskKind::Simples,
            "h2" => TaskKind::H2,
            "cover" => TaskKind::Cover,
            "lift" => TaskKind::Lift,
            "iterate" => TaskKind::Iterate,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Simples => "simples",
            TaskKind::H2 => "h2",
            TaskKind::Cover => "cover",
            TaskKind::Lift => "lift",
            TaskKind::Iterate => "iterate",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub presentation: Presentation,
    /// Permutation image of each generator, when given.
    pub perms: Option<Vec<Permutation>>,
}

#[derive(Clone, Debug)]
pub struct MapSpec {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub images: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub kind: TaskKind,
    pub p: u32,
    pub e: Option<usize>,
    pub rounds: usize,
    pub max_dim: Option<usize>,
    /// Explicit catalog indices; `None` selects all (subject to `max_dim`).
    pub modules: Option<Vec<usize>>,
    pub seed: u64,
    pub verify: bool,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub groups: Vec<GroupSpec>,
    pub maps: Vec<MapSpec>,
    pub task: TaskSpec,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Re-tags an error from a one-line sub-parser with its place in the job.
fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse { col, msg, .. } => perr(line, offset + col, msg),
        other => perr(line, offset + 1, other.to_string()),
    }
}

struct GroupDraft {
    name: String,
    line: usize,
    gens: Option<Vec<String>>,
    rels: Vec<(String, usize, usize)>,
    perms: Vec<(String, Permutation, usize)>,
}

struct MapDraft {
    name: String,
    domain: String,
    codomain: String,
    line: usize,
    images: Vec<(String, String, usize, usize)>,
}

enum Block {
    None,
    Group(GroupDraft),
    Map(MapDraft),
}

/// Byte column (1-based) of `part` inside `line`, which must contain it.
fn col_of(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

/// Parses a job; all words, cycles and names are resolved here.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let mut conv = CommutatorConvention::LeftInverse;
    let mut groups: Vec<GroupSpec> = Vec::new();
    let mut maps: Vec<MapSpec> = Vec::new();
    let mut task: Option<TaskSpec> = None;
    let mut block = Block::None;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        let body = line.trim();
        let (head, rest) = body.split_once(char::is_whitespace).map(|(h, r)| (h, r.trim())).unwrap_or((body, ""));
        let col = col_of(raw, body);
        if indented {
            match &mut block {
                Block::None => return Err(perr(ln, col, "indented line outside a group or map")),
                Block::Group(g) => match head {
                    "gens" => {
                        if g.gens.is_some() {
                            return Err(perr(ln, col, "generators already declared"));
                        }
                        let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                        if names.is_empty() {
                            return Err(perr(ln, col, "gens needs at least one name"));
                        }
                        g.gens = Some(names);
                    }
                    "rel" => g.rels.push((rest.to_string(), ln, col_of(raw, rest))),
                    "perm" => {
                        let (gen, cyc) = rest
                            .split_once(char::is_whitespace)
                            .ok_or_else(|| perr(ln, col, "perm needs a generator and cycles"))?;
                        let cyc = cyc.trim();
                        let p = parse_cycles(cyc, None).map_err(|e| relocate(e, ln, col_of(raw, cyc) - 1))?;
                        g.perms.push((gen.to_string(), p, ln));
                    }
                    _ => return Err(perr(ln, col, format!("unknown group directive '{head}'"))),
                },
                Block::Map(m) => {
                    let (gen, img) =
                        body.split_once("->").ok_or_else(|| perr(ln, col, "expected '<gen> -> <image>'"))?;
                    let img = img.trim();
                    m.images.push((gen.trim().to_string(), img.to_string(), ln, col_of(raw, img)));
                }
            }
            continue;
        }
        finish_block(std::mem::replace(&mut block, Block::None), conv, &mut groups, &mut maps)?;
        match head {
            "commutator" => {
                conv = match rest {
                    "left" => CommutatorConvention::LeftInverse,
                    "right" => CommutatorConvention::RightInverse,
                    _ => return Err(perr(ln, col, "commutator convention must be 'left' or 'right'")),
                }
            }
            "group" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(perr(ln, col, "expected 'group <name>'"));
                }
                if groups.iter().any(|g| g.name == rest) {
                    return Err(perr(ln, col, format!("group '{rest}' defined twice")));
                }
                block = Block::Group(GroupDraft {
                    name: rest.to_string(),
                    line: ln,
                    gens: None,
                    rels: Vec::new(),
                    perms: Vec::new(),
                });
            }
            "map" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 4 || parts[2] != "->" {
                    return Err(perr(ln, col, "expected 'map <name> <G> -> <H>'"));
                }
                block = Block::Map(MapDraft {
                    name: parts[0].to_string(),
                    domain: parts[1].to_string(),
                    codomain: parts[3].to_string(),
                    line: ln,
                    images: Vec::new(),
                });
            }
            "task" => {
                if task.is_some() {
                    return Err(perr(ln, col, "only one task per job"));
                }
                task = Some(parse_task(raw, rest, ln, col)?);
            }
            _ => return Err(perr(ln, col, format!("unknown directive '{head}'"))),
        }
    }
    finish_block(block, conv, &mut groups, &mut maps)?;
    let task = task.ok_or_else(|| perr(text.lines().count().max(1), 1, "job has no task"))?;
    Ok(JobSpec { groups, maps, task })
}

fn finish_block(
    block: Block,
    conv: CommutatorConvention,
    groups: &mut Vec<GroupSpec>,
    maps: &mut Vec<MapSpec>,
) -> Result<()> {
    match block {
        Block::None => Ok(()),
        Block::Group(g) => {
            let names = g.gens.ok_or_else(|| perr(g.line, 1, format!("group '{}' declares no generators", g.name)))?;
            let rels = g
                .rels
                .iter()
                .map(|(w, ln, c)| parse_word(w, &names, conv).map_err(|e| relocate(e, *ln, c - 1)))
                .collect::<Result<Vec<_>>>()?;
            let presentation = Presentation::new(names.clone(), rels).map_err(|e| relocate(e, g.line, 0))?;
            let perms = if g.perms.is_empty() {
                None
            } else {
                let mut slots: Vec<Option<Permutation>> = vec![None; names.len()];
                for (gen, p, ln) in g.perms {
                    let i = names
                        .iter()
                        .position(|n| *n == gen)
                        .ok_or_else(|| perr(ln, 1, format!("unknown generator '{gen}'")))?;
                    slots[i] = Some(p);
                }
                let perms = slots
                    .into_iter()
                    .zip(&names)
                    .map(|(p, n)| p.ok_or_else(|| perr(g.line, 1, format!("no permutation for generator '{n}'"))))
                    .collect::<Result<Vec<_>>>()?;
                let deg = perms.iter().map(|p| p.degree()).max().unwrap_or(0);
                Some(perms.iter().map(|p| p.extend(deg)).collect())
            };
            groups.push(GroupSpec { name: g.name, presentation, perms });
            Ok(())
        }
        Block::Map(m) => {
            let find = |name: &str| {
                groups.iter().find(|g| g.name == name).ok_or_else(|| perr(m.line, 1, format!("unknown group '{name}'")))
            };
            let dom = find(&m.domain)?;
            let cod = find(&m.codomain)?;
            let cod_perms = cod.perms.as_ref();
            let deg = cod_perms.and_then(|p| p.first()).map(|p| p.degree());
            let mut slots: Vec<Option<Permutation>> = vec![None; dom.presentation.num_gens()];
            for (gen, img, ln, c) in &m.images {
                let i = dom
                    .presentation
                    .names()
                    .iter()
                    .position(|n| n == gen)
                    .ok_or_else(|| perr(*ln, 1, format!("unknown generator '{gen}' of {}", m.domain)))?;
                let p = if looks_like_cycles(img) {
                    parse_cycles(img, deg).map_err(|e| relocate(e, *ln, c - 1))?
                } else {
                    let perms = cod_perms
                        .ok_or_else(|| perr(*ln, *c, format!("group '{}' has no permutations", m.codomain)))?;
                    let w = parse_word(img, cod.presentation.names(), conv).map_err(|e| relocate(e, *ln, c - 1))?;
                    eval_word(perms, &w)
                };
                slots[i] = Some(p);
            }
            let images = slots
                .into_iter()
                .zip(dom.presentation.names())
                .map(|(p, n)| p.ok_or_else(|| perr(m.line, 1, format!("map '{}' has no image for '{n}'", m.name))))
                .collect::<Result<Vec<_>>>()?;
            maps.push(MapSpec { name: m.name, domain: m.domain, codomain: m.codomain, images });
            Ok(())
        }
    }
}

fn parse_task(raw: &str, rest: &str, ln: usize, col: usize) -> Result<TaskSpec> {
    let mut words = rest.split_whitespace();
    let kind_text = words.next().ok_or_else(|| perr(ln, col, "task needs a kind"))?;
    let kind = TaskKind::parse(kind_text)
        .ok_or_else(|| perr(ln, col_of(raw, kind_text), format!("unknown task '{kind_text}'")))?;
    let mut t =
        TaskSpec { kind, p: 0, e: None, rounds: 1, max_dim: None, modules: None, seed: DEFAULT_SEED, verify: false };
    for w in words {
        let c = col_of(raw, w);
        let num = |v: &str| v.parse::<usize>().map_err(|_| perr(ln, c, format!("'{w}' needs a nonnegative integer")));
        match w.split_once('=') {
            None if w == "verify" => t.verify = true,
            Some(("p", v)) => t.p = num(v)? as u32,
            Some(("e", v)) => t.e = Some(num(v)?),
            Some(("rounds", v)) => t.rounds = num(v)?,
            Some(("maxdim", v)) => t.max_dim = Some(num(v)?),
            Some(("modules", "all")) => t.modules = None,
            Some(("modules", v)) => t.modules = Some(v.split(',').map(num).collect::<Result<Vec<_>>>()?),
            Some(("seed", v)) => {
                let hex = v.trim_start_matches("0x").trim_start_matches("0X");
                t.seed =
                    u64::from_str_radix(hex, 16).map_err(|_| perr(ln, c, format!("bad hexadecimal seed '{v}'")))?;
            }
            _ => return Err(perr(ln, c, format!("unknown task parameter '{w}'"))),
        }
    }
    if t.p < 2 {
        return Err(perr(ln, col, "task needs p=<prime>"));
    }
    if t.rounds == 0 {
        return Err(perr(ln, col, "rounds must be at least 1"));
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleRow {
    pub module: usize,
    pub dim: usize,
    /// Degree of End(V) over F_p.
    pub k: usize,
    pub r: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct H2Row {
    pub module: usize,
    pub dim: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub h2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverRow {
    pub module: usize,
    pub e: usize,
    pub order: String,
    pub kernel_dim: usize,
    pub split_dim: usize,
    pub nonsplit_blocks: usize,
    pub structure: String,
    pub canonical: String,
    pub alias: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftRow {
    pub module: usize,
    pub dim: usize,
    pub cover_dim: usize,
    /// `None` when the module does not lift the epimorphism.
    pub order: Option<String>,
    pub structure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Machine-readable outcome of a job.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: TaskKind,
    pub group: String,
    pub p: u32,
    pub seed: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub simples: Vec<SimpleRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub h2: Vec<H2Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<CoverRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lifts: Vec<LiftRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rounds: Vec<RoundRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verification: Vec<Check>,
}

impl Report {
    fn new(task: &TaskSpec, group: &str) -> Self {
        Report {
            task: task.kind,
            group: group.to_string(),
            p: task.p,
            seed: format!("{:#X}", task.seed),
            simples: Vec::new(),
            h2: Vec::new(),
            covers: Vec::new(),
            lifts: Vec::new(),
            rounds: Vec::new(),
            conclusion: None,
            verification: Vec::new(),
        }
    }

    pub fn verified(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.verification.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    /// Human-readable tables.
    pub fn table(&self) -> String {
        let mut s = format!("task {} on {} for p={} (seed {})\n", self.task.name(), self.group, self.p, self.seed);
        if !self.simples.is_empty() {
            s += "module  dim  k  r\n";
            for r in &self.simples {
                s += &format!("{:>6} {:>4} {:>2} {:>2}\n", r.module, r.dim, r.k, r.r);
            }
        }
        if !self.h2.is_empty() {
            s += "module  dim  Z2  B2  H2\n";
            for r in &self.h2 {
                s += &format!("{:>6} {:>4} {:>3} {:>3} {:>3}\n", r.module, r.dim, r.cocycles, r.coboundaries, r.h2);
            }
        }
        for r in &self.covers {
            s += &format!(
                "module {} e={}: order {}, structure {} (kernel {} = split {} + {} nonsplit)\n",
                r.module, r.e, r.order, r.structure, r.kernel_dim, r.split_dim, r.nonsplit_blocks
            );
        }
        for r in &self.lifts {
            match (&r.order, &r.structure) {
                (Some(o), Some(st)) => {
                    s += &format!("module {} (dim {}): order {o}, structure {st}\n", r.module, r.dim)
                }
                _ => s += &format!("module {} (dim {}): does not lift\n", r.module, r.dim),
            }
        }
        if !self.rounds.is_empty() {
            s += "round  order  structure  time  N-ops\n";
            for r in &self.rounds {
                let st = if r.fixed_point { fixed_point_message(self.p) } else { r.structure.clone() };
                s += &format!("{:>5}  {}  {}  {:.2}s  {}\n", r.round, r.order, st, r.seconds, r.n_ops);
            }
        }
        if let Some(c) = &self.conclusion {
            s += c;
            s.push('\n');
        }
        for c in &self.verification {
            s += &format!("verify {}: {} ({})\n", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail);
        }
        s
    }
}

impl JobSpec {
    fn group(&self, name: &str) -> Result<&GroupSpec> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown group '{name}'")))
    }

    fn single_map(&self) -> Result<&MapSpec> {
        match self.maps.as_slice() {
            [m] => Ok(m),
            [] => Err(Error::InvalidInput(format!("task {} needs a map", self.task.kind.name()))),
            _ => Err(Error::InvalidInput("more than one map defined".into())),
        }
    }

    /// The finite group H: the codomain of the map, or the only group with permutations.
    fn target_group(&self) -> Result<Arc<FiniteGroupData>> {
        let spec = match self.maps.as_slice() {
            [] => {
                let mut it = self.groups.iter().filter(|g| g.perms.is_some());
                match (it.next(), it.next()) {
                    (Some(g), None) => g,
                    (None, _) => return Err(Error::InvalidInput("no group has permutation generators".into())),
                    _ => return Err(Error::InvalidInput("several permutation groups and no map".into())),
                }
            }
            _ => self.group(&self.single_map()?.codomain)?,
        };
        let perms = spec
            .perms
            .clone()
            .ok_or_else(|| Error::InvalidInput(format!("group '{}' has no permutations", spec.name)))?;
        Ok(Arc::new(FiniteGroupData::new(&spec.name, spec.presentation.clone(), perms)?))
    }

    fn selected(&self, catalog: &SimpleCatalog) -> Vec<usize> {
        self.filter().select(catalog)
    }

    fn filter(&self) -> ModuleFilter {
        match (&self.task.modules, self.task.max_dim) {
            (Some(v), _) => ModuleFilter::Indices(v.clone()),
            (None, Some(d)) => ModuleFilter::MaxDim(d),
            (None, None) => ModuleFilter::default(),
        }
    }
}

/// Runs a job.
pub fn run(job: &JobSpec) -> Result<Report> {
    run_with(job, |_| {})
}

/// As [`run`], reporting each lifting round as it completes.
pub fn run_with(job: &JobSpec, on_round: impl FnMut(&RoundRecord)) -> Result<Report> {
    let t = &job.task;
    let h = job.target_group()?;
    let field = Field::prime(t.p)?;
    let mut report = Report::new(t, h.name());
    if t.verify {
        let ok = h.rws().check_confluent().is_ok();
        report.check("confluence", ok, format!("rewriting system of {}", h.name()));
    }
    match t.kind {
        TaskKind::Simples => {
            let cat = classify_simples(&h, &field, t.seed)?;
            report.simples =
                cat.iter().enumerate().map(|(i, m)| SimpleRow { module: i, dim: m.dim(), k: m.k, r: m.r }).collect();
        }
        TaskKind::H2 => {
            let cat = classify_simples(&h, &field, t.seed)?;
            let base = Base::finite(&h);
            for i in job.selected(&cat) {
                let v = Arc::new(ModuleAction::from_rep(&cat.get(i).rep)?);
                let b = h2_basis(&ParamRws::new(base.clone(), v.clone())?)?;
                if t.verify && h.order() <= ORACLE_MAX_ORDER && v.dim() <= ORACLE_MAX_DIM {
                    let o = cocycle_oracle(&v)?;
                    report.check(
                        "cocycle-oracle",
                        o == b.dim(),
                        format!("module {i}: rewriting {} vs table {o}", b.dim()),
                    );
                }
                report.h2.push(H2Row {
                    module: i,
                    dim: v.dim(),
                    cocycles: b.cocycles.dim(),
                    coboundaries: b.coboundaries.len(),
                    h2: b.dim(),
                });
            }
        }
        TaskKind::Cover => {
            let cat = classify_simples(&h, &field, t.seed)?;
            let (e, images) = match t.e {
                Some(e) => (e, default_images(&h, e)),
                None if job.maps.is_empty() => (2, default_images(&h, 2)),
                None => {
                    let m = job.single_map()?;
                    let idx = m
                        .images
                        .iter()
                        .map(|p| {
                            h.index_of_perm(&p.extend(h.degree()))
                                .ok_or_else(|| Error::InvalidInput("map image outside H".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (idx.len(), idx)
                }
            };
            let target = Target::finite(&h, &images)?;
            for i in job.selected(&cat) {
                let c = cover_ve(&target, &cat, i, t.seed)?;
                let mut st = crate::hybrid::Structure::new(t.p, h.name());
                st.push_layer(layer_components(c.group.action(), &cat, t.seed)?);
                if t.verify {
                    let s = schreier_kernel(&c.group, &c.images, h.order() + 1)?;
                    report.check(
                        "schreier-kernel",
                        s.len() == c.kernel_dim(),
                        format!("module {i}: {} vs {}", s.len(), c.kernel_dim()),
                    );
                }
                report.covers.push(CoverRow {
                    module: i,
                    e,
                    order: crate::lift::order_string(h.order(), t.p, c.kernel_dim()),
                    kernel_dim: c.kernel_dim(),
                    split_dim: c.split_dim,
                    nonsplit_blocks: c.nonsplit_blocks,
                    structure: st.compact(),
                    canonical: st.canonical(),
                    alias: st.alias(),
                });
            }
            if t.verify && h.order() <= WREATH_CAP {
                let bad = fox_wreath_failures(&h, t.p, e.max(1), FOX_WORDS, t.seed)?;
                report.check("fox-identity", bad == 0, format!("{bad} of {FOX_WORDS} words differ"));
            }
        }
        TaskKind::Lift | TaskKind::Iterate => {
            let m = job.single_map()?;
            let g = job.group(&m.domain)?;
            let images: Vec<Permutation> = m.images.iter().map(|p| p.extend(h.degree())).collect();
            let state = EpiState::new(g.presentation.clone(), &h, &images, t.p, t.seed)?;
            let filter = job.filter();
            let last = if t.kind == TaskKind::Lift {
                for i in filter.select(&state.catalog) {
                    let l = lift_by_module(&state, i)?;
                    let mut row = LiftRow {
                        module: i,
                        dim: state.catalog.get(i).dim(),
                        cover_dim: 0,
                        order: None,
                        structure: None,
                    };
                    if let Some(l) = l {
                        let mut st = state.structure.clone();
                        st.push_layer(layer_components(l.group.action(), &state.catalog, t.seed)?);
                        row.cover_dim = l.cover_dim;
                        row.order = Some(crate::lift::order_string(h.order(), t.p, l.group.kernel_exponent()));
                        row.structure = Some(st.compact());
                    }
                    report.lifts.push(row);
                }
                let mut on_round = on_round;
                let out = semisimple_step(&state, &filter)?;
                on_round(out.state.history.last().expect("round recorded"));
                out.state
            } else {
                iterate_with(&state, t.rounds, &filter, on_round)?
            };
            report.rounds = last.history.clone();
            if last.history.last().is_some_and(|r| r.fixed_point) {
                report.conclusion = Some(fixed_point_message(t.p));
            }
            if t.verify {
                let ok = last.target.base.rws().check_confluent().is_ok();
                report.check("confluence", ok, format!("rewriting system of the round-{} quotient", last.round));
                if h.order() <= WREATH_CAP {
                    let e = g.presentation.num_gens().max(1);
                    let bad = fox_wreath_failures(&h, t.p, e, FOX_WORDS, t.seed)?;
                    report.check("fox-identity", bad == 0, format!("{bad} of {FOX_WORDS} words differ"));
                }
            }
        }
    }
    Ok(report)
}
