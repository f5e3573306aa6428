//! Exact cellular surgery on complexes of dimension at most two.
//!
//! The sphere is cut out (every cell meeting it is truncated, leaving new
//! interface cells behind) and the interface is closed up again, either by
//! gluing in a cylinder or caps (`Attach`) or by identifying and contracting
//! (`Collapse`). Projective surgery runs equivariantly on the double cover and
//! takes the quotient at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::step::{check_embedded_sphere, SurgeryStep};
use crate::coxeter::{CellLabel, OrderedPartition, RegularCellComplex};
use crate::error::{Error, Result};

/// How the interface is closed up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Attach,
    Collapse,
    /// Homotopy model via order complexes (any dimension).
    Model,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s.to_ascii_lowercase().as_str() {
            "attach" => Ok(Mode::Attach),
            "collapse" => Ok(Mode::Collapse),
            "model" => Ok(Mode::Model),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (attach, collapse, model)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Attach => "attach",
            Mode::Collapse => "collapse",
            Mode::Model => "model",
        })
    }
}

/// Output of [`surgery_2d`].
#[derive(Debug, Clone)]
pub struct SurgeryResult {
    /// The surgered space; the quotient in projective mode.
    pub complex: RegularCellComplex,
    /// In projective mode, the surgered double cover with its involution.
    pub cover: Option<RegularCellComplex>,
}

// New boundary cell left by truncating `parent` around the sphere vertices `run`.
struct Iface {
    id: usize,
    parent: usize,
    run: Vec<usize>,
}

struct Work {
    k: RegularCellComplex,
    tau: Option<Vec<usize>>,
    iface: Vec<Iface>,
}

fn blank(k: &RegularCellComplex) -> RegularCellComplex {
    k.ground().map_or_else(RegularCellComplex::new, RegularCellComplex::with_ground)
}

fn endpoints(k: &RegularCellComplex, e: usize) -> Result<[usize; 2]> {
    match k.cell(e).facets[..] {
        [a, b] if a != b => Ok([a, b]),
        _ => Err(Error::Audit(format!("edge {e} does not have two endpoints"))),
    }
}

// Boundary of a polygon as (v_i, e_i) with e_i joining v_i and v_{i+1}.
fn boundary_cycle(k: &RegularCellComplex, f: usize) -> Result<Vec<(usize, usize)>> {
    let edges = &k.cell(f).facets;
    let bad = || Error::Audit(format!("boundary of 2-cell {f} is not a cycle"));
    let e0 = *edges.first().ok_or_else(bad)?;
    let [start, _] = endpoints(k, e0)?;
    let (mut v, mut e) = (start, e0);
    let mut seq = Vec::new();
    loop {
        seq.push((v, e));
        let [a, b] = endpoints(k, e)?;
        let w = if a == v { b } else { a };
        let next = *edges.iter().find(|&&x| x != e && k.cell(x).facets.contains(&w)).ok_or_else(bad)?;
        if next == e0 {
            if w != start {
                return Err(bad());
            }
            break;
        }
        (v, e) = (w, next);
        if seq.len() > edges.len() {
            return Err(bad());
        }
    }
    if seq.len() != edges.len() {
        return Err(bad());
    }
    Ok(seq)
}

// Maximal arcs of the boundary of `f` inside the sphere: (entering edge, vertices, leaving edge).
fn sphere_runs(k: &RegularCellComplex, f: usize, in_s: &[bool]) -> Result<Vec<(usize, Vec<usize>, usize)>> {
    let cyc = boundary_cycle(k, f)?;
    let n = 2 * cyc.len();
    let item = |p: usize| if p.is_multiple_of(2) { cyc[p / 2].0 } else { cyc[p / 2].1 };
    let Some(start) = (0..n).find(|&p| !in_s[item(p)]) else {
        return Err(Error::SphereNotEmbedded(format!("2-cell {f} is bounded by the sphere")));
    };
    let mut runs = Vec::new();
    let mut cur: Option<(usize, Vec<usize>)> = None;
    for off in 1..=n {
        let p = (start + off) % n;
        let c = item(p);
        if in_s[c] {
            let entry = cur.get_or_insert_with(|| (item((p + n - 1) % n), Vec::new()));
            if p % 2 == 0 {
                entry.1.push(c);
            }
        } else if let Some((e_in, verts)) = cur.take() {
            if verts.is_empty() || p % 2 == 0 {
                return Err(Error::SphereNotEmbedded(format!("sphere is not a subcomplex near 2-cell {f}")));
            }
            runs.push((e_in, verts, c));
        }
    }
    Ok(runs)
}

// Removes the sphere, truncating every cell that meets it.
fn truncate(k: &RegularCellComplex, sphere: &[usize], tau: Option<&[usize]>) -> Result<Work> {
    let mut in_s = vec![false; k.len()];
    for &c in sphere {
        in_s[c] = true;
    }
    if in_s.iter().all(|&b| b) {
        return Err(Error::NotFull);
    }
    if let Some(t) = tau {
        if (0..k.len()).any(|c| in_s[c] != in_s[t[c]]) {
            return Err(Error::Audit("sphere is not invariant under the involution".into()));
        }
    }
    let in_s_ref = &in_s;
    let by_dim = |d: usize| (0..k.len()).filter(move |&c| k.cell(c).dim == d && !in_s_ref[c]);
    let mut out = blank(k);
    let mut new_id = vec![usize::MAX; k.len()];
    let mut iface = Vec::new();

    for v in by_dim(0) {
        new_id[v] = out.push(0, k.cell(v).label.clone(), vec![]);
    }
    let mut ivert: HashMap<(usize, usize), usize> = HashMap::new();
    for e in by_dim(1) {
        for v in endpoints(k, e)? {
            if in_s[v] {
                let id = out.push(0, CellLabel::Cut(Box::new(k.cell(e).label.clone())), vec![]);
                ivert.insert((e, v), id);
                iface.push(Iface { id, parent: e, run: vec![v] });
            }
        }
    }
    for e in by_dim(1) {
        let ends = endpoints(k, e)?;
        let facets = ends.iter().map(|&v| if in_s[v] { ivert[&(e, v)] } else { new_id[v] }).collect();
        let label = &k.cell(e).label;
        let label = if ends.iter().any(|&v| in_s[v]) { CellLabel::Truncated(Box::new(label.clone())) } else { label.clone() };
        new_id[e] = out.push(1, label, facets);
    }
    let mut tedge: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut face_runs: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in by_dim(2) {
        for (e_in, verts, e_out) in sphere_runs(k, f, &in_s)? {
            let a = ivert[&(e_in, verts[0])];
            let b = ivert[&(e_out, *verts.last().unwrap())];
            if a == b {
                return Err(Error::SphereNotEmbedded(format!("2-cell {f} wraps around the sphere")));
            }
            let id = out.push(1, CellLabel::Cut(Box::new(k.cell(f).label.clone())), vec![a, b]);
            face_runs.entry(f).or_default().push(id);
            let mut key = verts.clone();
            key.sort_unstable();
            tedge.insert((f, key), id);
            iface.push(Iface { id, parent: f, run: verts });
        }
    }
    for f in by_dim(2) {
        let mut facets: Vec<usize> = k.cell(f).facets.iter().filter(|&&e| !in_s[e]).map(|&e| new_id[e]).collect();
        let label = &k.cell(f).label;
        let label = match face_runs.get(&f) {
            Some(ts) => {
                facets.extend(ts);
                CellLabel::Truncated(Box::new(label.clone()))
            }
            None => label.clone(),
        };
        new_id[f] = out.push(2, label, facets);
    }
    if let Some(d) = k.dim().filter(|&d| d > 2) {
        return Err(Error::Not2d(d));
    }

    let tau = match tau {
        None => None,
        Some(t) => {
            let mut nt = vec![usize::MAX; out.len()];
            for c in 0..k.len() {
                if !in_s[c] {
                    nt[new_id[c]] = new_id[t[c]];
                }
            }
            for (&(e, v), &id) in &ivert {
                nt[id] = ivert[&(t[e], t[v])];
            }
            for ((f, run), &id) in &tedge {
                let mut image: Vec<usize> = run.iter().map(|&v| t[v]).collect();
                image.sort_unstable();
                nt[id] = *tedge
                    .get(&(t[*f], image))
                    .ok_or_else(|| Error::Audit("involution does not preserve the cut".into()))?;
            }
            Some(nt)
        }
    };
    Ok(Work { k: out, tau, iface })
}

// Rebuilds after identifications: `rep` sends a cell to its survivor.
fn rebuild(w: &Work, rep: &[usize], deleted: &[bool], relabel: &HashMap<usize, CellLabel>) -> Result<Work> {
    let n = w.k.len();
    let mut order: Vec<usize> = (0..n).filter(|&c| rep[c] == c && !deleted[c]).collect();
    order.sort_by_key(|&c| (w.k.cell(c).dim, c));
    let mut new_id = vec![usize::MAX; n];
    let mut out = blank(&w.k);
    for &c in &order {
        let cell = w.k.cell(c);
        let mut facets: Vec<usize> =
            cell.facets.iter().filter(|&&f| !deleted[f]).map(|&f| new_id[rep[f]]).collect();
        let before = facets.len();
        facets.sort_unstable();
        facets.dedup();
        if facets.len() != before {
            return Err(Error::SphereNotEmbedded(format!("cell {} degenerates after collapsing", cell.label)));
        }
        let label = relabel.get(&c).cloned().unwrap_or_else(|| cell.label.clone());
        new_id[c] = out.push(cell.dim, label, facets);
    }
    let tau = w.tau.as_ref().map(|t| {
        let mut nt = vec![usize::MAX; out.len()];
        for &c in &order {
            nt[new_id[c]] = new_id[rep[t[c]]];
        }
        nt
    });
    Ok(Work { k: out, tau, iface: vec![] })
}

fn interface_key(old: &RegularCellComplex, parent: usize, step: &SurgeryStep) -> Result<OrderedPartition> {
    let label = &old.cell(parent).label;
    let key = label
        .ancestor()
        .map(|p| p.restrict(step.block()))
        .filter(|p| p.len() >= 2)
        .ok_or_else(|| Error::SphereNotEmbedded(format!("cell {label} near the sphere has no normal direction")))?;
    Ok(key)
}

fn glue_vertex_case(
    mut w: Work,
    old: &RegularCellComplex,
    poles: [usize; 2],
    step: &SurgeryStep,
    mode: Mode,
) -> Result<Work> {
    let mut side: [BTreeMap<(usize, OrderedPartition), usize>; 2] = Default::default();
    for f in &w.iface {
        let s = match f.run[..] {
            [v] if v == poles[0] => 0,
            [v] if v == poles[1] => 1,
            _ => return Err(Error::SphereNotEmbedded("interface run spans several sphere cells".into())),
        };
        let key = (w.k.cell(f.id).dim, interface_key(old, f.parent, step)?);
        if side[s].insert(key.clone(), f.id).is_some() {
            return Err(Error::SphereNotEmbedded(format!("normal direction {} repeats", key.1)));
        }
    }
    if !side[0].keys().eq(side[1].keys()) {
        return Err(Error::SphereNotEmbedded("the two links do not match".into()));
    }
    let label = |key: &OrderedPartition| CellLabel::Interface { merged: step.merged(), link: Some(key.clone()) };
    match mode {
        Mode::Attach => {
            // cylinder: a radial edge per matched vertex, a square per matched edge
            let mut radial_of: HashMap<usize, usize> = HashMap::new();
            let mut radials = Vec::new();
            for ((d, key), &a1) in &side[0] {
                if *d == 0 {
                    let a2 = side[1][&(0, key.clone())];
                    let r = w.k.push(1, label(key), vec![a1, a2]);
                    radial_of.insert(a1, r);
                    radial_of.insert(a2, r);
                    radials.push((r, a1, a2));
                }
            }
            let mut square_of: HashMap<usize, usize> = HashMap::new();
            let mut squares = Vec::new();
            for ((d, key), &t1) in &side[0] {
                if *d == 1 {
                    let t2 = side[1][&(1, key.clone())];
                    let [a, b] = endpoints(&w.k, t1)?;
                    let q = w.k.push(2, label(key), vec![t1, t2, radial_of[&a], radial_of[&b]]);
                    square_of.insert(t1, q);
                    square_of.insert(t2, q);
                    squares.push((q, t1, t2));
                }
            }
            if let Some(t) = &mut w.tau {
                t.resize(w.k.len(), usize::MAX);
                for (new, of) in [(&radials, &radial_of), (&squares, &square_of)] {
                    for &(c, x, y) in new {
                        let (cx, cy) = (of[&t[x]], of[&t[y]]);
                        if cx != cy {
                            return Err(Error::Audit("involution does not preserve the cylinder".into()));
                        }
                        t[c] = cx;
                    }
                }
            }
            Ok(w)
        }
        Mode::Collapse => {
            let mut rep: Vec<usize> = (0..w.k.len()).collect();
            let mut relabel = HashMap::new();
            for (key, &c1) in &side[0] {
                rep[side[1][key]] = c1;
                relabel.insert(c1, label(&key.1));
            }
            rebuild(&w, &rep, &vec![false; w.k.len()], &relabel)
        }
        Mode::Model => unreachable!("model mode is handled by order complexes"),
    }
}

fn glue_cycle_case(mut w: Work, step: &SurgeryStep, mode: Mode) -> Result<Work> {
    let verts: Vec<usize> = w.iface.iter().map(|f| f.id).filter(|&c| w.k.cell(c).dim == 0).collect();
    let edges: Vec<usize> = w.iface.iter().map(|f| f.id).filter(|&c| w.k.cell(c).dim == 1).collect();
    // components of the interface graph
    let mut comp: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &e in &edges {
        let [a, b] = endpoints(&w.k, e)?;
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp.insert(ra.max(rb), ra.min(rb));
    }
    if verts.iter().any(|v| degree.get(v) != Some(&2)) {
        return Err(Error::SphereNotEmbedded("interface is not a union of simple cycles".into()));
    }
    let mut cycles: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for &v in &verts {
        let r = find(&mut comp, v);
        cycles.entry(r).or_default().0.push(v);
    }
    for &e in &edges {
        let r = find(&mut comp, w.k.cell(e).facets[0]);
        cycles.entry(r).or_default().1.push(e);
    }
    let cycles: Vec<(Vec<usize>, Vec<usize>)> = cycles.into_values().collect();
    let index_of: HashMap<usize, usize> =
        cycles.iter().enumerate().flat_map(|(i, (vs, es))| vs.iter().chain(es).map(move |&c| (c, i))).collect();
    let cap_label = CellLabel::Interface { merged: step.merged(), link: None };
    let caps: Vec<usize> = match mode {
        Mode::Attach => cycles.iter().map(|(_, es)| w.k.push(2, cap_label.clone(), es.clone())).collect(),
        Mode::Collapse => cycles.iter().map(|_| w.k.push(0, cap_label.clone(), vec![])).collect(),
        Mode::Model => unreachable!("model mode is handled by order complexes"),
    };
    if let Some(t) = &mut w.tau {
        t.resize(w.k.len(), usize::MAX);
        for (i, (vs, _)) in cycles.iter().enumerate() {
            let j = index_of[&t[vs[0]]];
            if i == j {
                return Err(Error::FixedCell(caps[i]));
            }
            t[caps[i]] = caps[j];
        }
    }
    if mode == Mode::Attach {
        return Ok(w);
    }
    let mut rep: Vec<usize> = (0..w.k.len()).collect();
    let mut deleted = vec![false; w.k.len()];
    for (i, (vs, es)) in cycles.iter().enumerate() {
        for &v in vs {
            rep[v] = caps[i];
        }
        for &e in es {
            deleted[e] = true;
        }
    }
    rebuild(&w, &rep, &deleted, &HashMap::new())
}

/// Cells of `k` whose label keeps the block `J^c` of `step` together.
pub fn locate_sphere(k: &RegularCellComplex, step: &SurgeryStep) -> Vec<usize> {
    let p = step.block();
    (0..k.len()).filter(|&c| k.cell(c).label.has_together(p)).collect()
}

/// Exact surgery on a complex of dimension at most two.
///
/// The sphere is found by label: every cell keeping `J^c` together. In
/// projective mode `k` must be the double cover carrying its involution; the
/// result holds the quotient and the surgered cover.
pub fn surgery_2d(k: &RegularCellComplex, step: &SurgeryStep, projective: bool, mode: Mode) -> Result<SurgeryResult> {
    if mode == Mode::Model {
        return Err(Error::NotApplicable("model mode builds order complexes; use surgery_model".into()));
    }
    let dim = k.dim().ok_or_else(|| Error::NotApplicable("empty complex".into()))?;
    if dim > 2 {
        return Err(Error::Not2d(dim));
    }
    if k.ground() != Some(crate::Subset::full(step.m() - 1)) {
        return Err(Error::NotApplicable(format!("complex is not labelled by [{}]", step.m() - 1)));
    }
    let tau = if projective {
        Some(k.involution().ok_or_else(|| Error::NotApplicable("projective surgery needs the double cover".into()))?)
    } else {
        None
    };
    let sphere = locate_sphere(k, step);
    if sphere.len() == k.len() {
        return Err(Error::NotFull);
    }
    let sdim = usize::try_from(step.sphere_dim())
        .ok()
        .filter(|&d| d < dim)
        .ok_or_else(|| Error::NotApplicable(format!("no sphere for J = {} in dimension {dim}", step.j)))?;
    check_embedded_sphere(k, &sphere, sdim).map_err(Error::SphereNotEmbedded)?;
    let w = truncate(k, &sphere, tau)?;
    let w = match sdim {
        0 => glue_vertex_case(w, k, [sphere[0], sphere[1]], step, mode)?,
        _ => glue_cycle_case(w, step, mode)?,
    };
    let mut out = w.k;
    if let Some(t) = w.tau {
        out.set_involution(t);
    }
    out.audit()?;
    if projective {
        let q = out.projective_quotient()?;
        q.audit()?;
        Ok(SurgeryResult { complex: q, cover: Some(out) })
    } else {
        Ok(SurgeryResult { complex: out, cover: None })
    }
}
