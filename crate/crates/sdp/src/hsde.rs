//! Homogeneous self-dual interior-point method for block LMI problems
//!
//!     minimize  c . t   subject to   X_b(t) = F0_b + sum_i t_i K_{b,i}  PSD.
//!
//! Nesterov-Todd scaling, Mehrotra predictor-corrector, dense Schur
//! complement assembled per scaled coefficient matrix, iterative refinement
//! on every Newton solve. The homogeneous embedding tracks (t, S, Z, tau,
//! kappa); tau -> 0 with kappa bounded away from zero certifies
//! infeasibility instead of failing to converge.

use ncopt_linalg::{cholesky, cholesky_solve, eigvalsh, gemm, solve_triangular, svd, Mat};

use crate::presolve::LmiBlock;

#[derive(Debug, Clone)]
pub struct HsdeOptions {
    pub tol_gap: f64,
    pub tol_feas: f64,
    pub reduced_tol: f64,
    pub max_iter: usize,
    /// tau/kappa threshold for declaring infeasibility.
    pub infeas_tol: f64,
    pub verbose: bool,
}

impl Default for HsdeOptions {
    fn default() -> Self {
        HsdeOptions {
            tol_gap: 1e-8,
            tol_feas: 1e-8,
            reduced_tol: 1e-6,
            max_iter: 200,
            infeas_tol: 1e-8,
            verbose: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsdeStatus {
    Optimal,
    ReducedAccuracy,
    Stalled,
    NumericalError,
    MaxIter,
    PrimalInfeasible,
    DualInfeasible,
}

#[derive(Debug, Clone)]
pub struct HsdeResult {
    pub status: HsdeStatus,
    pub t: Vec<f64>,
    pub pobj: f64,
    pub dobj: f64,
    pub iters: usize,
    pub pres: f64,
    pub dres: f64,
    pub relgap: f64,
    /// Primal slack and dual matrices at the reported iterate, de-homogenized.
    pub s_blocks: Vec<Mat>,
    pub z_blocks: Vec<Mat>,
}

/// Coefficient data of one block with entries grouped by parameter.
struct BlockData {
    n: usize,
    f0: Mat,
    idx: Vec<usize>,
    pp: Vec<u32>,
    qq: Vec<u32>,
    vv: Vec<f64>,
    /// Sorted distinct parameter ids touching this block.
    params: Vec<usize>,
    /// Entry ranges per local parameter: entries of local param j live in
    /// group_start[j]..group_start[j+1].
    group_start: Vec<usize>,
}

impl BlockData {
    fn new(b: &LmiBlock) -> Self {
        let mut order: Vec<usize> = (0..b.idx.len()).collect();
        order.sort_by_key(|&e| b.idx[e]);
        let idx: Vec<usize> = order.iter().map(|&e| b.idx[e]).collect();
        let pp: Vec<u32> = order.iter().map(|&e| b.pp[e]).collect();
        let qq: Vec<u32> = order.iter().map(|&e| b.qq[e]).collect();
        let vv: Vec<f64> = order.iter().map(|&e| b.vv[e]).collect();
        let mut params = idx.clone();
        params.dedup();
        let mut group_start = Vec::with_capacity(params.len() + 1);
        let mut cur = usize::MAX;
        for (e, &p) in idx.iter().enumerate() {
            if p != cur {
                group_start.push(e);
                cur = p;
            }
        }
        group_start.push(idx.len());
        BlockData { n: b.dim, f0: b.f0.clone(), idx, pp, qq, vv, params, group_start }
    }

    fn apply_t(&self, t: &[f64]) -> Mat {
        let mut x = Mat::zeros(self.n, self.n);
        for e in 0..self.idx.len() {
            x[(self.pp[e] as usize, self.qq[e] as usize)] += self.vv[e] * t[self.idx[e]];
        }
        x
    }

    /// out_i += <K_i, U>.
    fn adjoint(&self, u: &Mat, out: &mut [f64]) {
        for e in 0..self.idx.len() {
            out[self.idx[e]] += self.vv[e] * u[(self.pp[e] as usize, self.qq[e] as usize)];
        }
    }
}

fn sym(x: &Mat) -> Mat {
    let mut s = x.clone();
    s.symmetrize();
    s
}

fn frob_dot(a: &Mat, b: &Mat) -> f64 {
    a.dot(b)
}

/// Explicit inverse of a lower-triangular factor.
fn inv_lower(l: &Mat) -> Mat {
    let mut inv = Mat::eye(l.rows());
    solve_triangular(l, false, 1.0, &mut inv);
    inv
}

/// Largest alpha with S + alpha D PSD, given the Cholesky factor of S.
fn max_step(l: &Mat, d: &Mat) -> f64 {
    let _n = l.rows();
    let mut m = d.clone();
    solve_triangular(l, false, 1.0, &mut m);
    let mut mt = m.transpose();
    solve_triangular(l, false, 1.0, &mut mt);
    let w = match eigvalsh(&sym(&mt)) {
        Ok(w) => w,
        Err(_) => return 0.0,
    };
    let lmin = w[0];
    if lmin >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lmin
    }
}

/// Per-iteration Nesterov-Todd scaling data of one block.
struct Scaling {
    ls: Mat,
    lz: Mat,
    r: Mat,
    rinv: Mat,
    /// mq = Rinv^T Rinv; the quadratic form Q(V) = mq V mq.
    mq: Mat,
    /// hw = R R^T; WtW(V) = hw V hw.
    hw: Mat,
    lam: Vec<f64>,
}

impl Scaling {
    fn wt(&self, v: &Mat) -> Mat {
        let tmp = ncopt_linalg::matmul(&self.r, v);
        let mut out = Mat::zeros(v.rows(), v.cols());
        gemm(1.0, &tmp, false, &self.r, true, 0.0, &mut out);
        out
    }

    fn wtw(&self, v: &Mat) -> Mat {
        let tmp = ncopt_linalg::matmul(&self.hw, v);
        ncopt_linalg::matmul(&tmp, &self.hw)
    }

    fn q(&self, v: &Mat) -> Mat {
        let tmp = ncopt_linalg::matmul(&self.mq, v);
        ncopt_linalg::matmul(&tmp, &self.mq)
    }

    /// Scaled dual direction R^T V R.
    fn scale_z(&self, v: &Mat) -> Mat {
        let mut tmp = Mat::zeros(v.rows(), v.cols());
        gemm(1.0, &self.r, true, v, false, 0.0, &mut tmp);
        ncopt_linalg::matmul(&tmp, &self.r)
    }

    /// Scaled primal direction Rinv V Rinv^T.
    fn scale_s(&self, v: &Mat) -> Mat {
        let tmp = ncopt_linalg::matmul(&self.rinv, v);
        let mut out = Mat::zeros(v.rows(), v.cols());
        gemm(1.0, &tmp, false, &self.rinv, true, 0.0, &mut out);
        out
    }
}

fn nt_scaling(s: &Mat, z: &Mat) -> Option<Scaling> {
    let mut ls = sym(s);
    let mut lz = sym(z);
    cholesky(&mut ls).ok()?;
    cholesky(&mut lz).ok()?;
    // SVD of Lz^T Ls.
    let mut prod = Mat::zeros(s.rows(), s.cols());
    gemm(1.0, &lz, true, &ls, false, 0.0, &mut prod);
    let (_, sv, vt) = svd(&prod).ok()?;
    let sv: Vec<f64> = sv.iter().map(|&x| x.max(1e-300)).collect();
    let ls_inv = inv_lower(&ls);
    // Rinv = diag(sqrt(sv)) Vt Ls^-1, R = Ls V diag(1/sqrt(sv)).
    let n = s.rows();
    let mut scaled_vt = vt.clone();
    for i in 0..n {
        let w = sv[i].sqrt();
        for j in 0..n {
            scaled_vt[(i, j)] *= w;
        }
    }
    let rinv = ncopt_linalg::matmul(&scaled_vt, &ls_inv);
    let mut v_scaled = vt.transpose();
    for j in 0..n {
        let w = 1.0 / sv[j].sqrt();
        for i in 0..n {
            v_scaled[(i, j)] *= w;
        }
    }
    let r = ncopt_linalg::matmul(&ls, &v_scaled);
    let mut mq = Mat::zeros(n, n);
    gemm(1.0, &rinv, true, &rinv, false, 0.0, &mut mq);
    let mut hw = Mat::zeros(n, n);
    gemm(1.0, &r, false, &r, true, 0.0, &mut hw);
    Some(Scaling { ls, lz, r, rinv, mq, hw, lam: sv })
}

/// Schur complement B with B_ij = sum_b <K_i, mq K_j mq>.
fn build_schur(blocks: &[BlockData], scalings: &[Scaling], m: usize) -> Mat {
    let mut b = Mat::zeros(m, m);
    for (bd, sc) in blocks.iter().zip(scalings) {
        let n = bd.n;
        let mb = bd.params.len();
        for j in 0..mb {
            let range = bd.group_start[j]..bd.group_start[j + 1];
            let ej = range.len();
            let mut amat = Mat::zeros(n, ej);
            let mut bmat = Mat::zeros(n, ej);
            for (k, e) in range.clone().enumerate() {
                let w = bd.vv[e];
                let pc = sc.mq.col(bd.pp[e] as usize);
                let qc = sc.mq.col(bd.qq[e] as usize);
                let ac = amat.col_mut(k);
                ac.copy_from_slice(pc);
                for x in ac.iter_mut() {
                    *x *= w;
                }
                bmat.col_mut(k).copy_from_slice(qc);
            }
            let mut y = Mat::zeros(n, n);
            gemm(1.0, &amat, false, &bmat, true, 0.0, &mut y);
            let gj = bd.params[j];
            for i in 0..mb {
                let mut acc = 0.0;
                for e in bd.group_start[i]..bd.group_start[i + 1] {
                    acc += bd.vv[e] * y[(bd.pp[e] as usize, bd.qq[e] as usize)];
                }
                b[(bd.params[i], gj)] += acc;
            }
        }
    }
    b
}

struct Direction {
    dx: Vec<f64>,
    ds: Vec<Mat>,
    dz: Vec<Mat>,
    dtau: f64,
    dkappa: f64,
}

struct Best {
    score: f64,
    t: Vec<f64>,
    pobj: f64,
    dobj: f64,
    pres: f64,
    dres: f64,
    relgap: f64,
    s: Vec<Mat>,
    z: Vec<Mat>,
}

pub fn solve_lmi(c: &[f64], lmi: &[LmiBlock], opts: &HsdeOptions) -> HsdeResult {
    let m = c.len();
    let blocks: Vec<BlockData> = lmi.iter().map(BlockData::new).collect();
    let nb = blocks.len();
    let nu: usize = blocks.iter().map(|b| b.n).sum();

    let mut s: Vec<Mat> = blocks.iter().map(|b| Mat::eye(b.n)).collect();
    let mut z: Vec<Mat> = blocks.iter().map(|b| Mat::eye(b.n)).collect();
    let (mut tau, mut kappa) = (1.0f64, 1.0f64);
    let mut t = vec![0.0f64; m];

    let hnorm = blocks.iter().map(|b| b.f0.norm_fro().powi(2)).sum::<f64>().sqrt();
    let cnorm = c.iter().map(|x| x * x).sum::<f64>().sqrt();

    let adjoint_all = |mats: &[Mat]| -> Vec<f64> {
        let mut out = vec![0.0; m];
        for (bd, mb) in blocks.iter().zip(mats) {
            bd.adjoint(mb, &mut out);
        }
        out
    };

    let mut best: Option<Best> = None;
    let mut stall = 0usize;

    let finish = |status: HsdeStatus, best: Option<Best>, iters: usize| -> HsdeResult {
        match best {
            Some(b) => HsdeResult {
                status,
                t: b.t,
                pobj: b.pobj,
                dobj: b.dobj,
                iters,
                pres: b.pres,
                dres: b.dres,
                relgap: b.relgap,
                s_blocks: b.s,
                z_blocks: b.z,
            },
            None => HsdeResult {
                status,
                t: Vec::new(),
                pobj: f64::NAN,
                dobj: f64::NAN,
                iters,
                pres: f64::NAN,
                dres: f64::NAN,
                relgap: f64::NAN,
                s_blocks: Vec::new(),
                z_blocks: Vec::new(),
            },
        }
    };

    for it in 0..opts.max_iter {
        // Residuals of the homogeneous system.
        let rz: Vec<Mat> = blocks
            .iter()
            .enumerate()
            .map(|(bi, bd)| {
                let mut r = s[bi].clone();
                r.add_scaled(-tau, &bd.f0);
                r.add_scaled(-1.0, &bd.apply_t(&t));
                r
            })
            .collect();
        let atz = adjoint_all(&z);
        let rc: Vec<f64> = (0..m).map(|i| tau * c[i] - atz[i]).collect();
        let ct: f64 = c.iter().zip(&t).map(|(a, b)| a * b).sum();
        let cz: f64 = blocks.iter().zip(&z).map(|(bd, zb)| frob_dot(&bd.f0, zb)).sum();
        let rtau = kappa + ct + cz;

        let szdot: f64 = s.iter().zip(&z).map(|(a, b)| frob_dot(a, b)).sum();
        let mu = (szdot + tau * kappa) / (nu + 1) as f64;

        let pobj = ct / tau;
        let dobj = -cz / tau;
        let gap = szdot / tau / tau;
        let relgap = gap / pobj.abs().max(1.0);
        // Feasibility residuals relative to both problem data and iterate
        // magnitude, so a well-scaled converged iterate is not rejected for
        // roundoff accumulated in the slack updates.
        let snorm = s.iter().map(|sb| sb.norm_fro().powi(2)).sum::<f64>().sqrt() / tau;
        let atz_norm = atz.iter().map(|x| x * x).sum::<f64>().sqrt();
        let pres =
            rz.iter().map(|r| r.norm_fro().powi(2)).sum::<f64>().sqrt() / tau / (1.0 + hnorm + snorm);
        let dres =
            rc.iter().map(|x| x * x).sum::<f64>().sqrt() / tau / (1.0 + cnorm + atz_norm / tau);

        if opts.verbose {
            eprintln!(
                "  it {it:3} pobj {pobj:+.8e} gap {relgap:.2e} pres {pres:.2e} dres {dres:.2e} tau {tau:.2e} kappa {kappa:.2e}"
            );
        }

        let snapshot = |s: &[Mat], z: &[Mat], t: &[f64]| Best {
            score: pres + dres + relgap,
            t: t.iter().map(|x| x / tau).collect(),
            pobj,
            dobj,
            pres,
            dres,
            relgap,
            s: s.iter()
                .map(|mb| {
                    let mut x = mb.clone();
                    x.scale(1.0 / tau);
                    x
                })
                .collect(),
            z: z.iter()
                .map(|mb| {
                    let mut x = mb.clone();
                    x.scale(1.0 / tau);
                    x
                })
                .collect(),
        };

        if pres < opts.tol_feas && dres < opts.tol_feas && relgap < opts.tol_gap {
            return finish(HsdeStatus::Optimal, Some(snapshot(&s, &z, &t)), it);
        }

        // tau collapsing against kappa signals an infeasibility certificate;
        // this outranks stall detection because the iterates diverge on
        // purpose along the certificate ray.
        if kappa / tau > 1.0 / opts.infeas_tol && mu / (tau * tau) > 1.0 / opts.infeas_tol {
            let hz = -cz;
            if hz > 0.0 && atz_norm / hz < 1e-6 {
                return finish(HsdeStatus::PrimalInfeasible, None, it);
            }
            if ct < 0.0 {
                return finish(HsdeStatus::DualInfeasible, None, it);
            }
        }

        let score = pres + dres + relgap;
        if best.as_ref().map_or(true, |b| score < b.score) {
            best = Some(snapshot(&s, &z, &t));
            stall = 0;
        } else {
            stall += 1;
            if stall >= 5 {
                let b = best.unwrap();
                let status = if b.pres < opts.reduced_tol && b.dres < opts.reduced_tol && b.relgap < opts.reduced_tol {
                    HsdeStatus::ReducedAccuracy
                } else {
                    HsdeStatus::Stalled
                };
                return finish(status, Some(b), it);
            }
        }

        // Nesterov-Todd scaling per block.
        let mut scalings = Vec::with_capacity(nb);
        let mut scale_failed = false;
        for bi in 0..nb {
            match nt_scaling(&s[bi], &z[bi]) {
                Some(sc) => scalings.push(sc),
                None => {
                    scale_failed = true;
                    break;
                }
            }
        }
        if scale_failed {
            let b = best.unwrap();
            let status = if b.pres < opts.reduced_tol && b.dres < opts.reduced_tol && b.relgap < opts.reduced_tol {
                HsdeStatus::ReducedAccuracy
            } else {
                HsdeStatus::NumericalError
            };
            return finish(status, Some(b), it);
        }

        let b_schur = build_schur(&blocks, &scalings, m);
        let mut bf = b_schur.clone();
        let mut maxdiag = 0.0f64;
        for i in 0..m {
            maxdiag = maxdiag.max(b_schur[(i, i)].abs());
        }
        let mut reg = 1e-12 * (1.0 + maxdiag);
        let mut factored = false;
        for _attempt in 0..4 {
            bf = b_schur.clone();
            for i in 0..m {
                bf[(i, i)] += reg;
            }
            if cholesky(&mut bf).is_ok() {
                factored = true;
                break;
            }
            reg *= 10.0;
        }
        if !factored {
            return finish(HsdeStatus::NumericalError, best, it);
        }

        let bsolve = |rhs: &[f64]| -> Vec<f64> {
            let mut x = Mat::zeros(m, 1);
            x.data_mut().copy_from_slice(rhs);
            cholesky_solve(&bf, &mut x);
            // One refinement step against the unregularized matrix.
            let mut prod = Mat::zeros(m, 1);
            gemm(1.0, &b_schur, false, &x, false, 0.0, &mut prod);
            let mut r = Mat::zeros(m, 1);
            for i in 0..m {
                r[(i, 0)] = rhs[i] - prod[(i, 0)];
            }
            cholesky_solve(&bf, &mut r);
            (0..m).map(|i| x[(i, 0)] + r[(i, 0)]).collect()
        };

        // Constant part of the Newton system involving tau.
        let qc: Vec<Mat> = blocks.iter().zip(&scalings).map(|(bd, sc)| sc.q(&bd.f0)).collect();
        let rhs1: Vec<f64> = {
            let aq = adjoint_all(&qc);
            (0..m).map(|i| -c[i] - aq[i]).collect()
        };
        let x1 = bsolve(&rhs1);
        let z1: Vec<Mat> = blocks
            .iter()
            .zip(&scalings)
            .map(|(bd, sc)| {
                let mut v = bd.apply_t(&x1);
                v.scale(-1.0);
                v.add_scaled(-1.0, &bd.f0);
                sc.q(&v)
            })
            .collect();
        let ctx1: f64 = c.iter().zip(&x1).map(|(a, b)| a * b).sum();
        let hz1: f64 = blocks.iter().zip(&z1).map(|(bd, zb)| frob_dot(&bd.f0, zb)).sum();
        let denom = ctx1 + hz1 - kappa / tau;

        let newton_solve = |r1: &[f64], r2: &[Mat], r3: f64, r4: &[Mat], r5: f64| -> Direction {
            let mut linv_r4 = Vec::with_capacity(nb);
            let mut rhs2 = Vec::with_capacity(nb);
            for bi in 0..nb {
                let lam = &scalings[bi].lam;
                let n = blocks[bi].n;
                let mut uo = Mat::zeros(n, n);
                for jj in 0..n {
                    for ii in 0..n {
                        uo[(ii, jj)] = 2.0 * r4[bi][(ii, jj)] / (lam[ii] + lam[jj]);
                    }
                }
                let mut r2b = r2[bi].clone();
                r2b.add_scaled(-1.0, &scalings[bi].wt(&uo));
                linv_r4.push(uo);
                rhs2.push(r2b);
            }
            let qr2: Vec<Mat> = (0..nb).map(|bi| scalings[bi].q(&rhs2[bi])).collect();
            let x2 = {
                let aq = adjoint_all(&qr2);
                let rhs: Vec<f64> = (0..m).map(|i| r1[i] - aq[i]).collect();
                bsolve(&rhs)
            };
            let z2: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let mut v = blocks[bi].apply_t(&x2);
                    v.scale(-1.0);
                    v.add_scaled(-1.0, &rhs2[bi]);
                    scalings[bi].q(&v)
                })
                .collect();
            let ctx2: f64 = c.iter().zip(&x2).map(|(a, b)| a * b).sum();
            let hz2: f64 = blocks.iter().zip(&z2).map(|(bd, zb)| frob_dot(&bd.f0, zb)).sum();
            let dtau = (r3 - ctx2 - hz2 - r5 / tau) / denom;
            let dx: Vec<f64> = (0..m).map(|i| x2[i] + dtau * x1[i]).collect();
            let dz: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let mut v = z2[bi].clone();
                    v.add_scaled(dtau, &z1[bi]);
                    sym(&v)
                })
                .collect();
            let dkappa = (r5 - kappa * dtau) / tau;
            let ds: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let mut v = scalings[bi].wt(&linv_r4[bi]);
                    v.add_scaled(-1.0, &scalings[bi].wtw(&dz[bi]));
                    sym(&v)
                })
                .collect();
            Direction { dx, ds, dz, dtau, dkappa }
        };

        let newton_residual = |r1: &[f64], r2: &[Mat], r3: f64, r4: &[Mat], r5: f64, d: &Direction| {
            let atdz = adjoint_all(&d.dz);
            let rr1: Vec<f64> = (0..m).map(|i| r1[i] - (-atdz[i] + c[i] * d.dtau)).collect();
            let rr2: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let mut v = r2[bi].clone();
                    v.add_scaled(1.0, &blocks[bi].apply_t(&d.dx));
                    v.add_scaled(-1.0, &d.ds[bi]);
                    v.add_scaled(d.dtau, &blocks[bi].f0);
                    v
                })
                .collect();
            let cdx: f64 = c.iter().zip(&d.dx).map(|(a, b)| a * b).sum();
            let cdz: f64 = blocks.iter().zip(&d.dz).map(|(bd, zb)| frob_dot(&bd.f0, zb)).sum();
            let rr3 = r3 - (cdx + cdz + d.dkappa);
            let rr4: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let zb = scalings[bi].scale_z(&d.dz[bi]);
                    let sb = scalings[bi].scale_s(&d.ds[bi]);
                    let mut u = sym(&zb);
                    u.add_scaled(1.0, &sym(&sb));
                    let lam = &scalings[bi].lam;
                    let n = blocks[bi].n;
                    let mut out = Mat::zeros(n, n);
                    for jj in 0..n {
                        for ii in 0..n {
                            out[(ii, jj)] = r4[bi][(ii, jj)] - (lam[ii] + lam[jj]) * u[(ii, jj)] / 2.0;
                        }
                    }
                    out
                })
                .collect();
            let rr5 = r5 - (tau * d.dkappa + kappa * d.dtau);
            (rr1, rr2, rr3, rr4, rr5)
        };

        let refined_solve = |r1: &[f64], r2: &[Mat], r3: f64, r4: &[Mat], r5: f64| -> Direction {
            let mut d = newton_solve(r1, r2, r3, r4, r5);
            for _ in 0..2 {
                let (rr1, rr2, rr3, rr4, rr5) = newton_residual(r1, r2, r3, r4, r5, &d);
                let e = newton_solve(&rr1, &rr2, rr3, &rr4, rr5);
                for i in 0..m {
                    d.dx[i] += e.dx[i];
                }
                for bi in 0..nb {
                    d.ds[bi].add_scaled(1.0, &e.ds[bi]);
                    d.dz[bi].add_scaled(1.0, &e.dz[bi]);
                }
                d.dtau += e.dtau;
                d.dkappa += e.dkappa;
            }
            d
        };

        let direction = |sigma: f64, corr_sz: Option<&[Mat]>, corr_tk: f64, fac: f64| -> Direction {
            let r4: Vec<Mat> = (0..nb)
                .map(|bi| {
                    let lam = &scalings[bi].lam;
                    let n = blocks[bi].n;
                    let mut dmat = Mat::zeros(n, n);
                    for i in 0..n {
                        dmat[(i, i)] = -lam[i] * lam[i] + sigma * mu;
                    }
                    if let Some(cs) = corr_sz {
                        dmat.add_scaled(-1.0, &cs[bi]);
                    }
                    dmat
                })
                .collect();
            let dtk = -tau * kappa + sigma * mu - corr_tk;
            let r1: Vec<f64> = rc.iter().map(|x| -fac * x).collect();
            let r2: Vec<Mat> = rz
                .iter()
                .map(|r| {
                    let mut v = r.clone();
                    v.scale(-fac);
                    v
                })
                .collect();
            refined_solve(&r1, &r2, -fac * rtau, &r4, dtk)
        };

        let steplen = |d: &Direction| -> f64 {
            let mut amax = f64::INFINITY;
            for bi in 0..nb {
                amax = amax.min(max_step(&scalings[bi].ls, &d.ds[bi]));
                amax = amax.min(max_step(&scalings[bi].lz, &d.dz[bi]));
            }
            if d.dtau < 0.0 {
                amax = amax.min(-tau / d.dtau);
            }
            if d.dkappa < 0.0 {
                amax = amax.min(-kappa / d.dkappa);
            }
            amax
        };

        // Predictor.
        let aff = direction(0.0, None, 0.0, 1.0);
        let amax = steplen(&aff);
        let aa = amax.min(1.0);
        let mut gap_a = (tau + aa * aff.dtau) * (kappa + aa * aff.dkappa);
        for bi in 0..nb {
            let mut sa = s[bi].clone();
            sa.add_scaled(aa, &aff.ds[bi]);
            let mut za = z[bi].clone();
            za.add_scaled(aa, &aff.dz[bi]);
            gap_a += frob_dot(&sa, &za);
        }
        let sigma = (gap_a / (szdot + tau * kappa)).clamp(0.0, 1.0).powi(3);

        // Corrector with the second-order term computed in scaled space.
        let corr: Vec<Mat> = (0..nb)
            .map(|bi| {
                let dsb = scalings[bi].scale_s(&aff.ds[bi]);
                let dzb = scalings[bi].scale_z(&aff.dz[bi]);
                sym(&ncopt_linalg::matmul(&dsb, &dzb))
            })
            .collect();
        let dir = direction(sigma, Some(&corr), aff.dtau * aff.dkappa, 1.0 - sigma);
        let amax = steplen(&dir);
        let alpha = (0.99 * amax).min(1.0);

        for i in 0..m {
            t[i] += alpha * dir.dx[i];
        }
        for bi in 0..nb {
            s[bi].add_scaled(alpha, &dir.ds[bi]);
            s[bi] = sym(&s[bi]);
            z[bi].add_scaled(alpha, &dir.dz[bi]);
            z[bi] = sym(&z[bi]);
        }
        tau += alpha * dir.dtau;
        kappa += alpha * dir.dkappa;
    }

    let b = best.unwrap();
    let status = if b.pres < opts.reduced_tol && b.dres < opts.reduced_tol && b.relgap < opts.reduced_tol {
        HsdeStatus::ReducedAccuracy
    } else {
        HsdeStatus::MaxIter
    };
    finish(status, Some(b), opts.max_iter)
}
