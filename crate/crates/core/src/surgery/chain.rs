//! Running a whole saturated chain of surgeries and recording each step.

use std::collections::BTreeMap;

use serde::Serialize;

use super::exact::{locate_sphere, surgery_2d, Mode};
use super::model::surgery_model;
use super::step::{check_embedded_sphere, SurgeryStep};
use crate::coxeter::{coxeter_complex_on, RegularCellComplex};
use crate::error::{Error, Result};
use crate::genetics::{saturated_chain, GeneticCode};
use crate::homology::{betti_oracle, cell_homology, homology, identify_small, HomologyReport, Identification};
use crate::subset::Subset;

/// Largest `m` for exact cellular surgery (ambient dimension two).
pub const MAX_EXACT_SIDES: usize = 5;

/// One row of a [`SurgeryTrace`]; row 0 is the starting Coxeter complex.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub added: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere: Option<String>,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    /// Number of 2-cells by number of sides.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub shapes: BTreeMap<usize, usize>,
    pub homology: HomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identification: Option<Identification>,
    /// Euler characteristic of the double cover in projective runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_euler_characteristic: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurgeryTrace {
    pub code: String,
    pub m: usize,
    pub projective: bool,
    pub mode: Mode,
    pub steps: Vec<StepRecord>,
    /// Predicted Betti numbers (non-projective runs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_betti: Option<Vec<usize>>,
    /// Cell complex after each exact step, for dumping.
    #[serde(skip)]
    pub complexes: Vec<RegularCellComplex>,
}

impl SurgeryTrace {
    pub fn last(&self) -> &StepRecord {
        self.steps.last().expect("trace has the starting row")
    }

    /// Whether the final homology agrees with the prediction.
    pub fn matches_oracle(&self) -> Option<bool> {
        let want = self.oracle_betti.as_ref()?;
        Some(&self.last().homology.betti_padded(want.len()) == want)
    }
}

fn record(step: usize, code: &GeneticCode, added: Option<&SurgeryStep>, k: &RegularCellComplex, dim: usize) -> Result<StepRecord> {
    let homology = cell_homology(k)?;
    Ok(StepRecord {
        step,
        code: code.notation(),
        added: added.map(|s| s.j),
        sphere: added.map(|s| s.sphere_partition.to_string()),
        f_vector: k.f_vector(),
        euler_characteristic: k.euler_characteristic(),
        shapes: k.shape_histogram(2),
        identification: identify_small(&homology, dim).ok(),
        homology,
        cover_euler_characteristic: None,
    })
}

/// Runs surgery along the saturated chain from the trivial code to `code`.
///
/// Exact modes need `m <= 5`; each later sphere is relocated by its labels
/// and must again be an embedded sphere. Model mode rebuilds the order
/// complex from the Coxeter complex after every step.
pub fn run_chain(code: &GeneticCode, projective: bool, mode: Mode) -> Result<SurgeryTrace> {
    code.ensure_valid()?;
    let m = code.m();
    if m < 3 {
        return Err(Error::InvalidCode(format!("need m >= 3, got {m}")));
    }
    let chain = saturated_chain(code)?;
    let steps: Vec<SurgeryStep> = chain.added.iter().map(|&j| SurgeryStep::new(m, j)).collect::<Result<_>>()?;
    let dim = m - 3;
    let cover = coxeter_complex_on(Subset::full(m - 1))?;
    let mut trace = SurgeryTrace {
        code: code.notation(),
        m,
        projective,
        mode,
        steps: Vec::new(),
        oracle_betti: if projective { None } else { Some(betti_oracle(code)?) },
        complexes: Vec::new(),
    };
    let space = |c: &RegularCellComplex| if projective { c.projective_quotient() } else { Ok(c.clone()) };

    if mode == Mode::Model {
        if projective {
            return Err(Error::NotApplicable("model mode is not available for projective runs".into()));
        }
        trace.steps.push(record(0, &chain.codes[0], None, &cover, dim)?);
        for (i, step) in steps.iter().enumerate() {
            let s = surgery_model(&cover, &steps[..=i])?;
            let h = homology(&s)?;
            trace.steps.push(StepRecord {
                step: i + 1,
                code: chain.codes[i + 1].notation(),
                added: Some(step.j),
                sphere: Some(step.sphere_partition.to_string()),
                f_vector: s.f_vector(),
                euler_characteristic: s.euler_characteristic(),
                shapes: BTreeMap::new(),
                identification: identify_small(&h, dim).ok(),
                homology: h,
                cover_euler_characteristic: None,
            });
        }
        return Ok(trace);
    }

    if m > MAX_EXACT_SIDES {
        return Err(Error::Not2d(dim));
    }
    let mut cur = cover;
    let start = space(&cur)?;
    let mut row = record(0, &chain.codes[0], None, &start, dim)?;
    row.cover_euler_characteristic = projective.then(|| cur.euler_characteristic());
    trace.steps.push(row);
    trace.complexes.push(start);
    for (i, step) in steps.iter().enumerate() {
        let sphere = locate_sphere(&cur, step);
        let sdim = usize::try_from(step.sphere_dim()).unwrap_or(usize::MAX);
        check_embedded_sphere(&cur, &sphere, sdim)
            .map_err(|detail| Error::SphereRelocationFailed { step: i + 1, detail })?;
        let out = surgery_2d(&cur, step, projective, mode)?;
        let mut row = record(i + 1, &chain.codes[i + 1], Some(step), &out.complex, dim)?;
        if let Some(c) = &out.cover {
            let chi = c.euler_characteristic();
            if chi != 2 * out.complex.euler_characteristic() {
                return Err(Error::Audit(format!("double cover has Euler characteristic {chi}")));
            }
            row.cover_euler_characteristic = Some(chi);
        }
        trace.steps.push(row);
        trace.complexes.push(out.complex.clone());
        cur = out.cover.unwrap_or(out.complex);
    }
    Ok(trace)
}

/// A row of the f-vector table of the standard pictures.
#[derive(Debug, Clone, Serialize)]
pub struct FigureRow {
    pub name: String,
    pub f_vector: Vec<usize>,
    pub shapes: BTreeMap<usize, usize>,
    pub euler_characteristic: i64,
    pub space: Option<String>,
}

impl FigureRow {
    fn new(name: impl Into<String>, k: &RegularCellComplex) -> Result<Self> {
        let h = cell_homology(k)?;
        Ok(FigureRow {
            name: name.into(),
            f_vector: k.f_vector(),
            shapes: k.shape_histogram(2),
            euler_characteristic: k.euler_characteristic(),
            space: identify_small(&h, 2).ok().map(|i| i.name),
        })
    }
}

/// f-vectors of surgery along `S_123` in `CA_3` and `ℙCA_3`, and of every
/// step of the `<125>` chain in both modes.
pub fn figures() -> Result<Vec<FigureRow>> {
    let k = coxeter_complex_on(Subset::full(4))?;
    let s = SurgeryStep::new(5, Subset::from_elements([4, 5]))?;
    let mut rows = vec![FigureRow::new("CA3", &k)?];
    for mode in [Mode::Attach, Mode::Collapse] {
        rows.push(FigureRow::new(format!("CA3 {mode} S123"), &surgery_2d(&k, &s, false, mode)?.complex)?);
    }
    rows.push(FigureRow::new("PCA3", &k.projective_quotient()?)?);
    for mode in [Mode::Attach, Mode::Collapse] {
        rows.push(FigureRow::new(format!("PCA3 {mode} PS123"), &surgery_2d(&k, &s, true, mode)?.complex)?);
    }
    let code = GeneticCode::parse("<125>", None)?;
    for mode in [Mode::Attach, Mode::Collapse] {
        let t = run_chain(&code, false, mode)?;
        for (r, c) in t.steps.iter().zip(&t.complexes).skip(1) {
            rows.push(FigureRow::new(format!("<125> {mode} step {} {}", r.step, r.code), c)?);
        }
    }
    Ok(rows)
}
