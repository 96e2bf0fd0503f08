//! The forbidden matrix family M(t), principal-submatrix scanning, the
//! classification of clean indecomposable t-fat Hoffman graphs, the family
//! G(t), and constructive line-Hoffman-graph certificates.

use crate::decomp::{check_decomposition, decompose, is_indecomposable, Decomposition};
use crate::error::{input_err, resource_err, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hoffman::{cherry, hoffman_isomorphic, HoffmanGraph, SpecialMatrix};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

/// Identifier of a forbidden pattern, with its parameter where applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PatternId {
    M1 { a: i64 },
    M2 { a: i64 },
    M3 { a: i64 },
    M4 { a: i64 },
    M5,
    M6,
    M7,
    M8,
    M9,
}

impl std::fmt::Display for PatternId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternId::M1 { a } => write!(f, "m1,{a}"),
            PatternId::M2 { a } => write!(f, "m2,{a}"),
            PatternId::M3 { a } => write!(f, "m3,{a}"),
            PatternId::M4 { a } => write!(f, "m4,{a}"),
            PatternId::M5 => write!(f, "m5"),
            PatternId::M6 => write!(f, "m6"),
            PatternId::M7 => write!(f, "m7"),
            PatternId::M8 => write!(f, "m8"),
            PatternId::M9 => write!(f, "m9"),
        }
    }
}

/// The explicit matrix of a pattern.
pub fn pattern_matrix(id: PatternId, t: i64) -> Result<SpecialMatrix> {
    if t < 1 {
        return input_err("t must be positive");
    }
    let m = |rows: Vec<Vec<i64>>| {
        let d = rows.len();
        SpecialMatrix::from_entries(d, rows.into_iter().flatten().collect())
    };
    match id {
        PatternId::M1 { a } => {
            if a > -2 {
                return input_err("m1 requires a <= -2");
            }
            m(vec![vec![-t + a]])
        }
        PatternId::M2 { a } => {
            if !(-t..=-2).contains(&a) {
                return input_err("m2 requires -t <= a <= -2");
            }
            m(vec![vec![-t, a], vec![a, -t]])
        }
        PatternId::M3 { a } => {
            if a != 1 && !(-t..=-1).contains(&a) {
                return input_err("m3 requires a in {1, -1, ..., -t}");
            }
            m(vec![vec![-t - 1, a], vec![a, -t]])
        }
        PatternId::M4 { a } => {
            if a != 1 && !(-t - 1..=-1).contains(&a) {
                return input_err("m4 requires a in {1, -1, ..., -t-1}");
            }
            m(vec![vec![-t - 1, a], vec![a, -t - 1]])
        }
        PatternId::M5 => m(vec![vec![-t, -1, -1], vec![-1, -t, -1], vec![-1, -1, -t]]),
        PatternId::M6 => m(vec![vec![-t, 1, 1], vec![1, -t, -1], vec![1, -1, -t]]),
        PatternId::M7 => m(vec![vec![-t, 0, 1], vec![0, -t, -1], vec![1, -1, -t]]),
        PatternId::M8 => m(vec![vec![-t, 0, 1], vec![0, -t, 1], vec![1, 1, -t]]),
        PatternId::M9 => m(vec![vec![-t, 0, -1], vec![0, -t, -1], vec![-1, -1, -t]]),
    }
}

/// All pattern ids with parameters in their defining ranges; the infinite
/// one-dimensional family m1 is truncated at `m1_min_a`.
pub fn all_pattern_ids(t: i64, m1_min_a: i64) -> Vec<PatternId> {
    let mut out = Vec::new();
    let mut a = -2;
    while a >= m1_min_a {
        out.push(PatternId::M1 { a });
        a -= 1;
    }
    for a in (-t..=-2).rev() {
        out.push(PatternId::M2 { a });
    }
    out.push(PatternId::M3 { a: 1 });
    for a in (-t..=-1).rev() {
        out.push(PatternId::M3 { a });
    }
    out.push(PatternId::M4 { a: 1 });
    for a in (-t - 1..=-1).rev() {
        out.push(PatternId::M4 { a });
    }
    out.extend([
        PatternId::M5,
        PatternId::M6,
        PatternId::M7,
        PatternId::M8,
        PatternId::M9,
    ]);
    out
}

/// Closed-form smallest eigenvalue of a pattern.
pub fn forbidden_lambda_min(id: PatternId, t: i64) -> f64 {
    let tf = t as f64;
    match id {
        PatternId::M1 { a } => -tf + a as f64,
        PatternId::M2 { a } => -tf - (a as f64).abs(),
        PatternId::M3 { a } => {
            let af = a as f64;
            -tf - (1.0 + (1.0 + 4.0 * af * af).sqrt()) / 2.0
        }
        PatternId::M4 { a } => -tf - 1.0 - (a as f64).abs(),
        PatternId::M5 | PatternId::M6 => -tf - 2.0,
        PatternId::M7 | PatternId::M8 | PatternId::M9 => -tf - 2f64.sqrt(),
    }
}

fn perm_equivalent(m: &SpecialMatrix, p: &SpecialMatrix) -> bool {
    let d = m.dim();
    if p.dim() != d {
        return false;
    }
    let perms: Vec<Vec<usize>> = match d {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        3 => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
        _ => return false,
    };
    perms.iter().any(|perm| {
        (0..d).all(|i| (0..d).all(|j| m.get(perm[i], perm[j]) == p.get(i, j)))
    })
}

/// Tests whether a 1x1, 2x2 or 3x3 matrix is permutation-equivalent to a
/// member of M(t). Membership in the infinite family M_1(t) is the
/// predicate "diagonal entry <= -t-2".
pub fn is_forbidden(m: &SpecialMatrix, t: i64) -> Result<Option<PatternId>> {
    if t < 1 {
        return input_err("t must be positive");
    }
    match m.dim() {
        1 => {
            let s = m.get(0, 0);
            if s <= -t - 2 {
                Ok(Some(PatternId::M1 { a: s + t }))
            } else {
                Ok(None)
            }
        }
        2 | 3 => {
            for id in all_pattern_ids(t, 0).into_iter().filter(|id| !matches!(id, PatternId::M1 { .. })) {
                let p = pattern_matrix(id, t)?;
                if p.dim() == m.dim() && perm_equivalent(m, &p) {
                    return Ok(Some(id));
                }
            }
            Ok(None)
        }
        d => input_err(format!("is_forbidden only handles dimensions 1-3, got {d}")),
    }
}

/// A principal submatrix of S matching a forbidden pattern.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ForbiddenHit {
    pub indices: Vec<usize>,
    pub pattern: PatternId,
}

/// Sparse view of a symmetric integer matrix: diagonal plus the nonzero
/// off-diagonal entries and their adjacency lists.
struct SparseView {
    diag: Vec<i64>,
    off: BTreeMap<(usize, usize), i64>,
    nbrs: Vec<Vec<usize>>,
}

impl SparseView {
    fn from_special(s: &SpecialMatrix) -> SparseView {
        let n = s.dim();
        let mut off = BTreeMap::new();
        let mut nbrs = vec![Vec::new(); n];
        for x in 0..n {
            for y in x + 1..n {
                let v = s.get(x, y);
                if v != 0 {
                    off.insert((x, y), v);
                    nbrs[x].push(y);
                    nbrs[y].push(x);
                }
            }
        }
        SparseView {
            diag: (0..n).map(|x| s.get(x, x)).collect(),
            off,
            nbrs,
        }
    }

    fn from_hoffman(h: &HoffmanGraph) -> SparseView {
        let n = h.slim_count();
        let off = h.sparse_special_entries();
        let mut nbrs = vec![Vec::new(); n];
        for &(x, y) in off.keys() {
            nbrs[x].push(y);
            nbrs[y].push(x);
        }
        SparseView {
            diag: (0..n).map(|x| -(h.fat_degree(x) as i64)).collect(),
            off,
            nbrs,
        }
    }

    fn get(&self, x: usize, y: usize) -> i64 {
        if x == y {
            self.diag[x]
        } else {
            let key = if x < y { (x, y) } else { (y, x) };
            self.off.get(&key).copied().unwrap_or(0)
        }
    }

    fn submatrix(&self, idx: &[usize]) -> SpecialMatrix {
        let d = idx.len();
        let entries: Vec<i64> = (0..d * d)
            .map(|k| self.get(idx[k / d], idx[k % d]))
            .collect();
        SpecialMatrix::from_entries(d, entries).expect("symmetric by construction")
    }
}

fn scan_view(view: &SparseView, t: i64) -> Result<Vec<ForbiddenHit>> {
    if t < 1 {
        return input_err("t must be positive");
    }
    let n = view.diag.len();
    let mut hits = Vec::new();
    for x in 0..n {
        if view.diag[x] <= -t - 2 {
            hits.push(ForbiddenHit {
                indices: vec![x],
                pattern: PatternId::M1 { a: view.diag[x] + t },
            });
        }
    }
    // every 2x2 and 3x3 pattern is irreducible, so at least two of its rows
    // interact; candidate pairs and triples come from the nonzero structure
    for &(x, y) in view.off.keys() {
        if let Some(p) = is_forbidden(&view.submatrix(&[x, y]), t)? {
            hits.push(ForbiddenHit {
                indices: vec![x, y],
                pattern: p,
            });
        }
    }
    let mut triples: BTreeSet<[usize; 3]> = BTreeSet::new();
    for c in 0..n {
        for (i, &u) in view.nbrs[c].iter().enumerate() {
            for &v in &view.nbrs[c][i + 1..] {
                let mut tri = [c, u, v];
                tri.sort_unstable();
                triples.insert(tri);
            }
        }
    }
    for tri in triples {
        if let Some(p) = is_forbidden(&view.submatrix(&tri), t)? {
            hits.push(ForbiddenHit {
                indices: tri.to_vec(),
                pattern: p,
            });
        }
    }
    hits.sort_by(|a, b| (a.indices.len(), &a.indices).cmp(&(b.indices.len(), &b.indices)));
    Ok(hits)
}

/// Scans all principal submatrices of size 1-3 for forbidden patterns.
/// Only index sets whose off-diagonal support can carry a pattern are
/// visited, so the scan is fast on sparse special matrices.
pub fn scan_forbidden(s: &SpecialMatrix, t: i64) -> Result<Vec<ForbiddenHit>> {
    scan_view(&SparseView::from_special(s), t)
}

/// Forbidden scan of the special matrix of `h` without forming the dense
/// matrix; the cost scales with the nonzero structure.
pub fn scan_forbidden_hoffman(h: &HoffmanGraph, t: i64) -> Result<Vec<ForbiddenHit>> {
    scan_view(&SparseView::from_hoffman(h), t)
}

/// Outcome of the structural classification of an indecomposable t-fat
/// Hoffman graph with respect to M(t).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum ClassificationCase {
    /// S = (-t)
    MinusT,
    /// S = (-t-1)
    MinusTMinus1,
    /// S = J - (t+1) I with at least 2 slim vertices
    OneClass,
    /// S is the two-block form with class sizes r1 >= r2
    TwoClass { r1: usize, r2: usize },
    /// S contains a forbidden principal submatrix
    Forbidden,
}

/// Classifies an indecomposable t-fat Hoffman graph. Clean graphs fall into
/// one of the four structured cases; the relation "S_xy = 1 or x = y" is
/// rebuilt and checked to be an equivalence with at most two classes.
pub fn classify_indecomposable(h: &HoffmanGraph, t: usize) -> Result<ClassificationCase> {
    if t == 0 {
        return input_err("t must be positive");
    }
    if !h.is_t_fat(t) {
        return input_err(format!("graph is not {t}-fat"));
    }
    if !is_indecomposable(h)? {
        return input_err("graph is decomposable");
    }
    let s = h.special_matrix();
    let ti = t as i64;
    if !scan_forbidden(&s, ti)?.is_empty() {
        return Ok(ClassificationCase::Forbidden);
    }
    let n = s.dim();
    if n == 1 {
        return match s.get(0, 0) {
            v if v == -ti => Ok(ClassificationCase::MinusT),
            v if v == -ti - 1 => Ok(ClassificationCase::MinusTMinus1),
            v => Err(Error::Internal(format!(
                "clean 1x1 special matrix with entry {v}"
            ))),
        };
    }
    for x in 0..n {
        if s.get(x, x) != -ti {
            return Err(Error::Internal(
                "clean indecomposable matrix with off-(-t) diagonal and >1 slim vertex".into(),
            ));
        }
        for y in x + 1..n {
            if !matches!(s.get(x, y), 1 | -1) {
                return Err(Error::Internal(format!(
                    "clean indecomposable matrix with entry {} at ({x},{y})",
                    s.get(x, y)
                )));
            }
        }
    }
    // classes of the relation "S_xy = 1 or x = y"
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        class[start] = count;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if y != x && class[y] == usize::MAX && s.get(x, y) == 1 {
                    class[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    // the relation must be an equivalence: within classes all 1, across all -1
    for x in 0..n {
        for y in x + 1..n {
            let expect = if class[x] == class[y] { 1 } else { -1 };
            if s.get(x, y) != expect {
                return Err(Error::Internal(
                    "relation on slim vertices is not an equivalence".into(),
                ));
            }
        }
    }
    match count {
        1 => Ok(ClassificationCase::OneClass),
        2 => {
            let r_first = class.iter().filter(|&&c| c == 0).count();
            let (r1, r2) = (r_first.max(n - r_first), r_first.min(n - r_first));
            if r1 > t {
                return Err(Error::Internal(format!(
                    "two-class case with class size {r1} > t = {t}"
                )));
            }
            Ok(ClassificationCase::TwoClass { r1, r2 })
        }
        c => Err(Error::Internal(format!("{c} relation classes (max 2 possible)"))),
    }
}

/// Builds the two-block member of G(t) determined by the cross-pair share
/// matrix `c` (entries 1 or 2): slim classes of sizes r1 and r2, each class
/// a clique, cross pair (x,y) adjacent iff it shares two fat vertices.
fn two_block_realization(r1: usize, r2: usize, t: usize, shares: &[Vec<u8>]) -> Result<HoffmanGraph> {
    let n = r1 + r2;
    let mut slim = Graph::new(n);
    for x in 0..r1 {
        for y in x + 1..r1 {
            slim.add_edge(x, y)?;
        }
    }
    for x in r1..n {
        for y in x + 1..n {
            slim.add_edge(x, y)?;
        }
    }
    let mut fats = Vec::new();
    let mut fat_deg = vec![0usize; n];
    for x in 0..r1 {
        for y in 0..r2 {
            let c = shares[x][y] as usize;
            if c == 2 {
                slim.add_edge(x, r1 + y)?;
            }
            for _ in 0..c {
                fats.push(VertexSet::new(vec![x, r1 + y]));
            }
            fat_deg[x] += c;
            fat_deg[r1 + y] += c;
        }
    }
    for (x, &d) in fat_deg.iter().enumerate() {
        for _ in d..t {
            fats.push(VertexSet::new(vec![x]));
        }
    }
    HoffmanGraph::new(slim, fats)
}

/// Enumerates the family G(t): the cherry with special matrix (-t-1) and
/// every realization of the two-block special matrix with class sizes
/// 1 <= r2 <= r1 <= t, up to isomorphism. A fat vertex of such a graph can
/// meet at most one slim vertex per class, so every realization is fixed by
/// the number of fat vertices (1 or 2) shared by each cross pair; the
/// enumeration runs over those share matrices.
pub fn enumerate_gt(t: usize) -> Result<Vec<HoffmanGraph>> {
    if t == 0 {
        return input_err("t must be positive");
    }
    if t > 3 {
        return resource_err("G(t) enumeration supported for t <= 3");
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<HoffmanGraph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&t) {
        return Ok(v.clone());
    }
    let mut out = vec![cherry(t + 1)?];
    for r1 in 1..=t {
        for r2 in 1..=r1 {
            let cells = r1 * r2;
            'matrices: for mask in 0..(1u32 << cells) {
                let shares: Vec<Vec<u8>> = (0..r1)
                    .map(|x| {
                        (0..r2)
                            .map(|y| 1 + (mask >> (x * r2 + y) & 1) as u8)
                            .collect()
                    })
                    .collect();
                for x in 0..r1 {
                    if shares[x].iter().map(|&c| c as usize).sum::<usize>() > t {
                        continue 'matrices;
                    }
                }
                for y in 0..r2 {
                    if (0..r1).map(|x| shares[x][y] as usize).sum::<usize>() > t {
                        continue 'matrices;
                    }
                }
                let h = two_block_realization(r1, r2, t, &shares)?;
                let mut dup = false;
                for known in &out {
                    if hoffman_isomorphic(&h, known)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    out.push(h);
                }
            }
        }
    }
    cache.lock().unwrap().insert(t, out.clone());
    Ok(out)
}

/// Tag describing what a certificate part is matched against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PartTag {
    /// Part is an induced Hoffman subgraph of the cherry with t+1 fats.
    InducedCherry,
    /// Part is isomorphic to `enumerate_gt(t)[index]`.
    Member { index: usize },
}

/// A witness that `h` is a G(t)-line Hoffman graph: a Hoffman graph with
/// the same slim graph containing `h`, decomposed into parts each matched
/// into G(t).
#[derive(Debug, Clone)]
pub struct LineCertificate {
    pub witness: HoffmanGraph,
    pub added_fats: Vec<VertexSet>,
    pub parts: Decomposition,
    pub part_tags: Vec<PartTag>,
}

/// Why certification failed.
#[derive(Debug, Clone)]
pub struct CertifyFailure {
    pub reasons: Vec<String>,
    pub hits: Vec<ForbiddenHit>,
}

#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certified(LineCertificate),
    Failed(CertifyFailure),
}

/// Attempts to build a line certificate from the finest decomposition:
/// cherry-like parts are matched directly, complete one-class parts gain
/// one covering fat vertex and split into cherries, and two-class parts
/// are matched into G(t) by isomorphism.
pub fn certify_line(h: &HoffmanGraph, t: usize) -> Result<CertifyOutcome> {
    if t == 0 {
        return input_err("t must be positive");
    }
    if !h.is_t_fat(t) {
        return input_err(format!("graph is not {t}-fat"));
    }
    let members = enumerate_gt(t)?;
    let base = decompose(h)?;
    let ti = t as i64;
    let mut reasons = Vec::new();
    let mut all_hits = Vec::new();
    let mut added_fats: Vec<VertexSet> = Vec::new();
    // (slim set in h's indexing, tag) for the witness decomposition
    let mut witness_parts: Vec<(VertexSet, PartTag)> = Vec::new();
    for (part, pg) in base.parts.iter().zip(&base.part_graphs) {
        let s = pg.special_matrix();
        let hits = scan_forbidden(&s, ti)?;
        if !hits.is_empty() {
            let verts = part.members();
            for hit in hits {
                let global: Vec<usize> = hit.indices.iter().map(|&i| verts[i]).collect();
                reasons.push(format!(
                    "forbidden pattern {} at slim vertices {:?}",
                    hit.pattern, global
                ));
                all_hits.push(ForbiddenHit {
                    indices: global,
                    pattern: hit.pattern,
                });
            }
            continue;
        }
        let n = s.dim();
        let is_one_class = n >= 2
            && (0..n).all(|x| {
                (0..n).all(|y| s.get(x, y) == if x == y { -ti } else { 1 })
            });
        if n == 1 && s.get(0, 0) == -ti {
            witness_parts.push((part.clone(), PartTag::InducedCherry));
        } else if n == 1 && s.get(0, 0) == -ti - 1 {
            witness_parts.push((part.clone(), PartTag::Member { index: 0 }));
        } else if is_one_class {
            // one covering fat vertex splits the part into cherries
            added_fats.push(part.clone());
            for v in part.iter() {
                witness_parts.push((VertexSet::new(vec![v]), PartTag::Member { index: 0 }));
            }
        } else {
            let mut matched = None;
            for (i, member) in members.iter().enumerate() {
                if hoffman_isomorphic(pg, member)? {
                    matched = Some(i);
                    break;
                }
            }
            match matched {
                Some(i) => witness_parts.push((part.clone(), PartTag::Member { index: i })),
                None => reasons.push(format!(
                    "part on slim vertices {:?} matches no member of G({t})",
                    part.members()
                )),
            }
        }
    }
    if !reasons.is_empty() {
        return Ok(CertifyOutcome::Failed(CertifyFailure {
            reasons,
            hits: all_hits,
        }));
    }
    let mut fats = h.fats().to_vec();
    fats.extend(added_fats.iter().cloned());
    let witness = HoffmanGraph::new(h.slim_graph().clone(), fats)?;
    witness_parts.sort_by(|a, b| a.0.cmp(&b.0));
    let parts: Vec<VertexSet> = witness_parts.iter().map(|(p, _)| p.clone()).collect();
    let part_tags: Vec<PartTag> = witness_parts.iter().map(|&(_, tag)| tag).collect();
    let part_graphs = parts
        .iter()
        .map(|p| witness.generated_subgraph(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(CertifyOutcome::Certified(LineCertificate {
        witness,
        added_fats,
        parts: Decomposition { parts, part_graphs },
        part_tags,
    }))
}

/// True iff `sub` is isomorphic to an induced Hoffman subgraph of `host`:
/// some slim embedding preserving adjacency exactly, with `sub`'s fat
/// multiset realizable by distinct host fats restricted to the image.
pub fn is_induced_hoffman_subgraph(sub: &HoffmanGraph, host: &HoffmanGraph) -> Result<bool> {
    if sub.slim_count() > host.slim_count() || sub.fat_count() > host.fat_count() {
        return Ok(false);
    }
    if host.slim_count() + host.fat_count() > 24 {
        return resource_err("induced-subgraph search limited to 24 host vertices");
    }
    let mut map = vec![usize::MAX; sub.slim_count()];
    let mut used = vec![false; host.slim_count()];
    Ok(embed_backtrack(sub, host, 0, &mut map, &mut used))
}

fn embed_backtrack(
    sub: &HoffmanGraph,
    host: &HoffmanGraph,
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == sub.slim_count() {
        // count host fats by restricted neighborhood on the image
        let image: BTreeSet<usize> = map.iter().copied().collect();
        let mut available: BTreeMap<VertexSet, usize> = BTreeMap::new();
        for f in host.fats() {
            let restricted: Vec<usize> = f.iter().filter(|x| image.contains(x)).collect();
            if !restricted.is_empty() {
                *available.entry(VertexSet::new(restricted)).or_insert(0) += 1;
            }
        }
        let mut needed: BTreeMap<VertexSet, usize> = BTreeMap::new();
        for f in sub.fats() {
            let mapped: VertexSet = f.iter().map(|x| map[x]).collect();
            *needed.entry(mapped).or_insert(0) += 1;
        }
        return needed
            .iter()
            .all(|(k, &cnt)| available.get(k).copied().unwrap_or(0) >= cnt);
    }
    for w in 0..host.slim_count() {
        if used[w] {
            continue;
        }
        let ok = (0..v).all(|u| {
            sub.slim_graph().has_edge(u, v) == host.slim_graph().has_edge(map[u], w)
        });
        if ok {
            map[v] = w;
            used[w] = true;
            if embed_backtrack(sub, host, v + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
    }
    false
}

/// Result of the independent certificate recheck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verification {
    fn fail(reason: impl Into<String>) -> Verification {
        Verification {
            ok: false,
            reason: Some(reason.into()),
        }
    }
    fn pass() -> Verification {
        Verification {
            ok: true,
            reason: None,
        }
    }
}

/// Independently rechecks a line certificate: same slim graph, `h` induced
/// in the witness, a valid block-diagonal decomposition, and every part an
/// induced Hoffman subgraph of the tagged G(t) member.
pub fn verify_certificate(h: &HoffmanGraph, cert: &LineCertificate, t: usize) -> Result<Verification> {
    if t == 0 {
        return input_err("t must be positive");
    }
    let w = &cert.witness;
    if w.slim_graph() != h.slim_graph() {
        return Ok(Verification::fail("witness slim graph differs from input"));
    }
    // h + added fats must reproduce the witness fat multiset
    let mut expect: Vec<VertexSet> = h.fats().to_vec();
    expect.extend(cert.added_fats.iter().cloned());
    expect.sort();
    let mut got: Vec<VertexSet> = w.fats().to_vec();
    got.sort();
    if expect != got {
        return Ok(Verification::fail(
            "witness fats are not the input fats plus the added fats",
        ));
    }
    if cert.parts.parts.len() != cert.part_tags.len() {
        return Ok(Verification::fail("part/tag count mismatch"));
    }
    match check_decomposition(w, &cert.parts.parts) {
        Ok(true) => {}
        Ok(false) => return Ok(Verification::fail("parts violate the decomposition criterion")),
        Err(e) => return Ok(Verification::fail(format!("invalid partition: {e}"))),
    }
    // block diagonality of S(witness), via the nonzero entries only
    let mut owner = vec![usize::MAX; w.slim_count()];
    for (i, p) in cert.parts.parts.iter().enumerate() {
        for v in p.iter() {
            owner[v] = i;
        }
    }
    for (&(x, y), _) in w.sparse_special_entries().iter() {
        if owner[x] != owner[y] {
            return Ok(Verification::fail(format!(
                "special matrix not block diagonal at ({x},{y})"
            )));
        }
    }
    let members = enumerate_gt(t)?;
    for (i, (part, tag)) in cert.parts.parts.iter().zip(&cert.part_tags).enumerate() {
        let pg = w.generated_subgraph(part)?;
        if pg != cert.parts.part_graphs[i] {
            return Ok(Verification::fail(format!(
                "stored part graph {i} is not the generated subgraph"
            )));
        }
        let host = match tag {
            PartTag::InducedCherry => cherry(t + 1)?,
            PartTag::Member { index } => match members.get(*index) {
                Some(m) => m.clone(),
                None => return Ok(Verification::fail(format!("tag references unknown member {index}"))),
            },
        };
        let contained = match tag {
            PartTag::InducedCherry => is_induced_hoffman_subgraph(&pg, &host)?,
            PartTag::Member { .. } => hoffman_isomorphic(&pg, &host)?,
        };
        if !contained {
            return Ok(Verification::fail(format!(
                "part {i} does not match its tag {tag:?}"
            )));
        }
    }
    Ok(Verification::pass())
}

/// The two-block special matrix with classes r1, r2 (reference shape).
pub fn two_block_matrix(r1: usize, r2: usize, t: i64) -> SpecialMatrix {
    let n = r1 + r2;
    let entries: Vec<i64> = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            if x == y {
                -t
            } else if (x < r1) == (y < r1) {
                1
            } else {
                -1
            }
        })
        .collect();
    SpecialMatrix::from_entries(n, entries).expect("two-block shape")
}
