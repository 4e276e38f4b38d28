//! Reduction of an [`SdpModel`] to the solver's LMI form
//!
//!     minimize  c . t   subject to   F0_b + sum_i t_i K_{b,i}  PSD
//!
//! Equalities are eliminated by Gaussian substitution (each one pins its
//! largest-coefficient variable), complex Hermitian blocks are embedded as
//! real symmetric blocks of doubled size, blocks decouple into connected
//! components of their nonzero pattern, and components repeated verbatim are
//! solved once.

use std::collections::BTreeMap;

use ncopt_linalg::{eigvalsh, Mat};
use num_complex::Complex64;

use crate::model::{SVar, SdpModel, Sense};

const DROP_TOL: f64 = 1e-13;
const EQ_INFEAS_TOL: f64 = 1e-7;

/// One realified block in solver form. Coefficient entries cover both
/// triangles with the diagonal stored once.
#[derive(Debug, Clone)]
pub struct LmiBlock {
    pub name: String,
    pub dim: usize,
    pub f0: Mat,
    pub idx: Vec<usize>,
    pub pp: Vec<u32>,
    pub qq: Vec<u32>,
    pub vv: Vec<f64>,
}

/// Fully preprocessed problem plus the bookkeeping needed to map a solver
/// point back onto the model's variables.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub num_params: usize,
    /// Objective over params, already oriented for minimization.
    pub c: Vec<f64>,
    pub obj_const: f64,
    pub maximize: bool,
    pub blocks: Vec<LmiBlock>,
    /// Pinned variable -> (constant, combination of free variables).
    subs: Vec<Option<(f64, Vec<(SVar, f64)>)>>,
    /// param index -> model variable.
    free_of: Vec<SVar>,
}

#[derive(Debug, Clone)]
pub enum ReduceError {
    /// The linear equalities or a constant block are contradictory.
    Infeasible(String),
    /// The objective moves along a direction no constraint sees.
    Unbounded(String),
}

impl Reduced {
    /// Expands a solver point over params into the model's variable vector.
    pub fn reconstruct(&self, t: &[f64], num_vars: usize) -> Vec<f64> {
        let mut values = vec![0.0; num_vars];
        for (k, &v) in self.free_of.iter().enumerate() {
            values[v] = t[k];
        }
        for (v, sub) in self.subs.iter().enumerate() {
            if let Some((c0, rest)) = sub {
                let mut val = *c0;
                for &(q, cq) in rest {
                    val += cq * values[q];
                }
                values[v] = val;
            }
        }
        values
    }

    /// Objective value in model units given the solver's c.t value.
    pub fn model_objective(&self, lmi_value: f64) -> f64 {
        if self.maximize {
            -lmi_value + self.obj_const
        } else {
            lmi_value + self.obj_const
        }
    }
}

type Row = BTreeMap<SVar, f64>;

struct Eliminator {
    subs: Vec<Option<(f64, Row)>>,
}

impl Eliminator {
    fn new(num_vars: usize) -> Self {
        Eliminator { subs: vec![None; num_vars] }
    }

    /// Substitutes every pinned variable out of `row` until none remain.
    fn resolve(&self, row: &mut Row, rhs_const: &mut f64) {
        loop {
            let Some((&p, _)) = row.iter().find(|(p, _)| self.subs[**p].is_some()) else {
                return;
            };
            let cp = row.remove(&p).unwrap();
            let (c0, rest) = self.subs[p].as_ref().unwrap();
            *rhs_const += cp * c0;
            for (&q, &cq) in rest {
                let e = row.entry(q).or_insert(0.0);
                *e += cp * cq;
                if e.abs() < 1e-12 {
                    row.remove(&q);
                }
            }
        }
    }

    fn pin(&mut self, mut row: Row, mut cst: f64) -> Result<(), ReduceError> {
        self.resolve(&mut row, &mut cst);
        if row.is_empty() {
            if cst.abs() > EQ_INFEAS_TOL {
                return Err(ReduceError::Infeasible(format!(
                    "equality reduces to 0 = {cst:.3e}"
                )));
            }
            return Ok(());
        }
        let (&piv, &cp) = row
            .iter()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .unwrap();
        row.remove(&piv);
        let rest: Row = row.into_iter().map(|(q, cq)| (q, -cq / cp)).collect();
        self.subs[piv] = Some((-cst / cp, rest));
        Ok(())
    }

    /// Rewrites every substitution in terms of free variables only.
    fn close(&mut self) {
        for v in 0..self.subs.len() {
            if let Some((c0, rest)) = self.subs[v].clone() {
                let mut row = rest;
                let mut cst = c0;
                self.resolve(&mut row, &mut cst);
                self.subs[v] = Some((cst, row));
            }
        }
    }
}

/// Upper-triangle complex data of one block after substitution.
struct SubstitutedBlock {
    name: String,
    dim: usize,
    real: bool,
    entries: BTreeMap<(u32, u32, SVar), Complex64>,
    consts: BTreeMap<(u32, u32), Complex64>,
}

fn substitute_block(block: &crate::model::PsdBlock, elim: &Eliminator) -> SubstitutedBlock {
    let mut entries: BTreeMap<(u32, u32, SVar), Complex64> = BTreeMap::new();
    let mut consts: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
    for &(i, j, c) in &block.constants {
        *consts.entry((i, j)).or_default() += c;
    }
    for e in &block.entries {
        if let Some((c0, rest)) = &elim.subs[e.var] {
            *consts.entry((e.row, e.col)).or_default() += e.coeff * c0;
            for (&q, &cq) in rest {
                *entries.entry((e.row, e.col, q)).or_default() += e.coeff * cq;
            }
        } else {
            *entries.entry((e.row, e.col, e.var)).or_default() += e.coeff;
        }
    }
    entries.retain(|_, c| c.norm() > DROP_TOL);
    consts.retain(|_, c| c.norm() > DROP_TOL);
    SubstitutedBlock { name: block.name.clone(), dim: block.dim, real: block.real_entries, entries, consts }
}

/// [[Re, -Im], [Im, Re]] embedding on upper-triangle data. The output keys
/// stay in the upper triangle of the doubled block.
fn realify(sb: &SubstitutedBlock) -> (usize, BTreeMap<(u32, u32, SVar), f64>, BTreeMap<(u32, u32), f64>) {
    let d = sb.dim as u32;
    let mut entries: BTreeMap<(u32, u32, SVar), f64> = BTreeMap::new();
    let mut consts: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    if sb.real {
        for (&(i, j, v), c) in &sb.entries {
            debug_assert!(c.im.abs() <= DROP_TOL);
            entries.insert((i, j, v), c.re);
        }
        for (&(i, j), c) in &sb.consts {
            debug_assert!(c.im.abs() <= DROP_TOL);
            consts.insert((i, j), c.re);
        }
        return (sb.dim, entries, consts);
    }
    for (&(i, j, v), c) in &sb.entries {
        if c.re.abs() > DROP_TOL {
            *entries.entry((i, j, v)).or_default() += c.re;
            *entries.entry((i + d, j + d, v)).or_default() += c.re;
        }
        if c.im.abs() > DROP_TOL {
            debug_assert!(i != j, "imaginary coefficient on a Hermitian diagonal");
            *entries.entry((i, j + d, v)).or_default() += -c.im;
            *entries.entry((j, i + d, v)).or_default() += c.im;
        }
    }
    for (&(i, j), c) in &sb.consts {
        if c.re.abs() > DROP_TOL {
            *consts.entry((i, j)).or_default() += c.re;
            *consts.entry((i + d, j + d)).or_default() += c.re;
        }
        if c.im.abs() > DROP_TOL {
            *consts.entry((i, j + d)).or_default() += -c.im;
            if i != j {
                *consts.entry((j, i + d)).or_default() += c.im;
            }
        }
    }
    (2 * sb.dim, entries, consts)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Splits a realified block into connected components of its nonzero
/// pattern. Constant-only components must already be PSD; they carry no
/// decision content and are dropped (or reported as contradictions).
fn split_component_blocks(
    name: &str,
    dim: usize,
    entries: &BTreeMap<(u32, u32, SVar), f64>,
    consts: &BTreeMap<(u32, u32), f64>,
) -> Result<Vec<(usize, BTreeMap<(u32, u32, SVar), f64>, BTreeMap<(u32, u32), f64>, String)>, ReduceError> {
    let mut uf = UnionFind::new(dim);
    for &(i, j, _) in entries.keys() {
        uf.union(i as usize, j as usize);
    }
    for &(i, j) in consts.keys() {
        uf.union(i as usize, j as usize);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..dim {
        groups.entry(uf.find(r)).or_default().push(r);
    }
    let mut out = Vec::new();
    for (gi, rows) in groups.values().enumerate() {
        let mut local = vec![usize::MAX; dim];
        for (k, &r) in rows.iter().enumerate() {
            local[r] = k;
        }
        let sub_entries: BTreeMap<(u32, u32, SVar), f64> = entries
            .iter()
            .filter(|((i, _, _), _)| local[*i as usize] != usize::MAX)
            .map(|(&(i, j, v), &c)| ((local[i as usize] as u32, local[j as usize] as u32, v), c))
            .collect();
        let sub_consts: BTreeMap<(u32, u32), f64> = consts
            .iter()
            .filter(|((i, _), _)| local[*i as usize] != usize::MAX)
            .map(|(&(i, j), &c)| ((local[i as usize] as u32, local[j as usize] as u32), c))
            .collect();
        if sub_entries.is_empty() {
            let k = rows.len();
            let mut f = Mat::zeros(k, k);
            for (&(i, j), &c) in &sub_consts {
                f[(i as usize, j as usize)] = c;
                f[(j as usize, i as usize)] = c;
            }
            let lmin = if sub_consts.keys().all(|&(i, j)| i == j) {
                (0..k).map(|i| f[(i, i)]).fold(f64::INFINITY, f64::min)
            } else {
                eigvalsh(&f).map_err(|e| ReduceError::Infeasible(format!("{e:?}")))?[0]
            };
            if lmin < -1e-9 {
                return Err(ReduceError::Infeasible(format!(
                    "block {name}: fully determined principal part has eigenvalue {lmin:.3e}"
                )));
            }
            continue;
        }
        out.push((rows.len(), sub_entries, sub_consts, format!("{name}/{gi}")));
    }
    Ok(out)
}

/// Runs the full reduction. `Err` carries structurally detected outcomes.
pub fn reduce(model: &SdpModel) -> Result<Reduced, ReduceError> {
    let mut elim = Eliminator::new(model.num_vars);
    for eq in &model.equalities {
        let mut row: Row = BTreeMap::new();
        for &(v, c) in &eq.coeffs {
            if c != 0.0 {
                *row.entry(v).or_insert(0.0) += c;
            }
        }
        row.retain(|_, c| c.abs() > 1e-14);
        elim.pin(row, -eq.rhs)?;
    }
    elim.close();

    let mut obj_row: Row = BTreeMap::new();
    for &(v, c) in &model.objective.coeffs {
        *obj_row.entry(v).or_insert(0.0) += c;
    }
    let mut obj_const = model.objective.constant;
    {
        // pin() stores rows as row + const = 0; objective resolve reuses the
        // same substitution with the constant tracked positively.
        let mut cst = 0.0;
        elim.resolve(&mut obj_row, &mut cst);
        obj_const += cst;
    }
    obj_row.retain(|_, c| c.abs() > 1e-14);

    // Substitute, realify, split, dedup.
    let mut pieces: Vec<(String, usize, BTreeMap<(u32, u32, SVar), f64>, BTreeMap<(u32, u32), f64>)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for block in &model.blocks {
        let sb = substitute_block(block, &elim);
        let (dim, entries, consts) = realify(&sb);
        for (d, e, cst, nm) in split_component_blocks(&sb.name, dim, &entries, &consts)? {
            let sig: (usize, Vec<(u32, u32, SVar, i64)>, Vec<(u32, u32, i64)>) = (
                d,
                e.iter().map(|(&(i, j, v), &c)| (i, j, v, (c * 1e9).round() as i64)).collect(),
                cst.iter().map(|(&(i, j), &c)| (i, j, (c * 1e9).round() as i64)).collect(),
            );
            if seen.insert(sig) {
                pieces.push((nm, d, e, cst));
            }
        }
    }

    let mut used: std::collections::BTreeSet<SVar> = std::collections::BTreeSet::new();
    for (_, _, e, _) in &pieces {
        used.extend(e.keys().map(|&(_, _, v)| v));
    }
    for (&v, &c) in &obj_row {
        if c != 0.0 && !used.contains(&v) {
            return Err(ReduceError::Unbounded(format!(
                "objective moves along unconstrained variable {v}"
            )));
        }
    }

    let free_of: Vec<SVar> = used.iter().copied().collect();
    let mut comp_of = vec![usize::MAX; model.num_vars];
    for (k, &v) in free_of.iter().enumerate() {
        comp_of[v] = k;
    }

    let maximize = model.sense == Sense::Maximize;
    let mut c = vec![0.0; free_of.len()];
    for (&v, &cv) in &obj_row {
        c[comp_of[v]] = if maximize { -cv } else { cv };
    }

    let mut blocks = Vec::with_capacity(pieces.len());
    for (name, dim, entries, consts) in pieces {
        let mut f0 = Mat::zeros(dim, dim);
        for (&(i, j), &v) in &consts {
            f0[(i as usize, j as usize)] = v;
            if i != j {
                f0[(j as usize, i as usize)] = v;
            }
        }
        let mut idx = Vec::new();
        let mut pp = Vec::new();
        let mut qq = Vec::new();
        let mut vv = Vec::new();
        for (&(i, j, v), &cv) in &entries {
            idx.push(comp_of[v]);
            pp.push(i);
            qq.push(j);
            vv.push(cv);
            if i != j {
                idx.push(comp_of[v]);
                pp.push(j);
                qq.push(i);
                vv.push(cv);
            }
        }
        blocks.push(LmiBlock { name, dim, f0, idx, pp, qq, vv });
    }

    Ok(Reduced {
        num_params: free_of.len(),
        c,
        obj_const,
        maximize,
        blocks,
        subs: elim
            .subs
            .into_iter()
            .map(|s| s.map(|(c0, rest)| (c0, rest.into_iter().collect())))
            .collect(),
        free_of,
    })
}
