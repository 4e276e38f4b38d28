//! SDPA sparse interchange.
//!
//! Export writes the reduced LMI form in the standard ".dat-s" layout
//!
//!     m
//!     nBlock
//!     blockStruct
//!     c_1 ... c_m
//!     matno blkno i j value      (matno 0 is F0; 1-based indices; i <= j)
//!
//! for the problem  min c.x  s.t.  sum_i x_i F_i - F0  PSD, which matches our
//! form  F0' + sum t_i K_i  PSD  with  F0 = -F0', F_i = K_i. Entry order is
//! deterministic. Comment lines (leading '*' or '"') carry the objective
//! constant and sense so a round-trip reproduces model-space values.

use std::fmt::Write as _;

use ncopt_linalg::Mat;

use crate::presolve::{LmiBlock, Reduced};
use crate::{SdpError, SdpSolution, SolveStatus};

fn fmt_f64(x: f64) -> String {
    // Shortest representation that round-trips f64 exactly.
    let mut s = format!("{x}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

/// Serializes the reduced problem. Diagonal-only blocks are not compressed
/// into negative blockStruct entries; every block is written dense-sparse.
pub fn export_sdpa(red: &Reduced) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "* objective constant {}", fmt_f64(red.obj_const));
    let _ = writeln!(out, "* sense {}", if red.maximize { "maximize" } else { "minimize" });
    let _ = writeln!(out, "{}", red.num_params);
    let _ = writeln!(out, "{}", red.blocks.len());
    let dims: Vec<String> = red.blocks.iter().map(|b| b.dim.to_string()).collect();
    let _ = writeln!(out, "{}", dims.join(" "));
    let cs: Vec<String> = red.c.iter().map(|&x| fmt_f64(x)).collect();
    let _ = writeln!(out, "{}", cs.join(" "));

    for (bno, b) in red.blocks.iter().enumerate() {
        // F0 = -constant part, upper triangle.
        for j in 0..b.dim {
            for i in 0..=j {
                let v = b.f0[(i, j)];
                if v != 0.0 {
                    let _ = writeln!(out, "0 {} {} {} {}", bno + 1, i + 1, j + 1, fmt_f64(-v));
                }
            }
        }
        // K_i coefficient matrices: entries cover both triangles, emit i <= j.
        let mut rows: Vec<(usize, u32, u32, f64)> = Vec::new();
        for e in 0..b.idx.len() {
            if b.pp[e] <= b.qq[e] {
                rows.push((b.idx[e], b.pp[e], b.qq[e], b.vv[e]));
            }
        }
        rows.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        for (param, i, j, v) in rows {
            let _ = writeln!(out, "{} {} {} {} {}", param + 1, bno + 1, i + 1, j + 1, fmt_f64(v));
        }
    }
    out
}

/// Parsed structural content of a ".dat-s" file.
#[derive(Debug, Clone)]
pub struct SdpaProblem {
    pub num_params: usize,
    pub c: Vec<f64>,
    pub blocks: Vec<LmiBlock>,
    pub obj_const: f64,
    pub maximize: bool,
}

/// Parses ".dat-s" text back into LMI form (F0 = -(matno 0), K_i = matno i).
pub fn parse_sdpa(text: &str) -> Result<SdpaProblem, SdpError> {
    let mut obj_const = 0.0;
    let mut maximize = false;
    let mut body = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('*').or_else(|| trimmed.strip_prefix('"')) {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("objective constant") {
                obj_const = v
                    .trim()
                    .parse()
                    .map_err(|_| SdpError::Parse("bad objective constant comment".into()))?;
            } else if let Some(v) = rest.strip_prefix("sense") {
                maximize = v.trim() == "maximize";
            }
            continue;
        }
        body.push(trimmed);
    }
    if body.len() < 4 {
        return Err(SdpError::Parse("truncated header".into()));
    }
    fn split_nums(s: &str) -> Vec<&str> {
        s.split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')' || c == '{' || c == '}')
            .filter(|t| !t.is_empty())
            .collect()
    }
    let m: usize = split_nums(body[0])
        .first()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| SdpError::Parse("bad m".into()))?;
    let nblock: usize = split_nums(body[1])
        .first()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| SdpError::Parse("bad nBlock".into()))?;
    let dims_raw = split_nums(body[2]);
    if dims_raw.len() != nblock {
        return Err(SdpError::Parse(format!(
            "blockStruct lists {} entries, expected {nblock}",
            dims_raw.len()
        )));
    }
    let dims: Vec<usize> = dims_raw
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map(|d| d.unsigned_abs() as usize)
                .map_err(|_| SdpError::Parse(format!("bad block size {t}")))
        })
        .collect::<Result<_, _>>()?;
    let c: Vec<f64> = split_nums(body[3])
        .iter()
        .map(|t| t.parse().map_err(|_| SdpError::Parse(format!("bad objective entry {t}"))))
        .collect::<Result<_, _>>()?;
    if c.len() != m {
        return Err(SdpError::Parse(format!("objective lists {} entries, expected {m}", c.len())));
    }

    let mut blocks: Vec<LmiBlock> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| LmiBlock {
            name: format!("block{}", i + 1),
            dim: d,
            f0: Mat::zeros(d, d),
            idx: Vec::new(),
            pp: Vec::new(),
            qq: Vec::new(),
            vv: Vec::new(),
        })
        .collect();

    for line in &body[4..] {
        let toks = split_nums(line);
        if toks.len() != 5 {
            return Err(SdpError::Parse(format!("bad entry line: {line}")));
        }
        let matno: usize = toks[0].parse().map_err(|_| SdpError::Parse("bad matno".into()))?;
        let blkno: usize = toks[1].parse().map_err(|_| SdpError::Parse("bad blkno".into()))?;
        let i: usize = toks[2].parse().map_err(|_| SdpError::Parse("bad row".into()))?;
        let j: usize = toks[3].parse().map_err(|_| SdpError::Parse("bad col".into()))?;
        let v: f64 = toks[4].parse().map_err(|_| SdpError::Parse("bad value".into()))?;
        if matno > m || blkno == 0 || blkno > nblock {
            return Err(SdpError::Parse(format!("entry out of range: {line}")));
        }
        let b = &mut blocks[blkno - 1];
        if i == 0 || j == 0 || i > b.dim || j > b.dim || i > j {
            return Err(SdpError::Parse(format!("bad cell indices: {line}")));
        }
        let (i, j) = (i - 1, j - 1);
        if matno == 0 {
            b.f0[(i, j)] = -v;
            b.f0[(j, i)] = -v;
        } else {
            b.idx.push(matno - 1);
            b.pp.push(i as u32);
            b.qq.push(j as u32);
            b.vv.push(v);
            if i != j {
                b.idx.push(matno - 1);
                b.pp.push(j as u32);
                b.qq.push(i as u32);
                b.vv.push(v);
            }
        }
    }
    Ok(SdpaProblem { num_params: m, c, blocks, obj_const, maximize })
}

/// Parses the output file of an SDPA-family solver: objective values and
/// termination phase. Matrix dumps are ignored.
pub fn import_sdpa_result(text: &str) -> Result<SdpSolution, SdpError> {
    let mut primal: Option<f64> = None;
    let mut dual: Option<f64> = None;
    let mut phase: Option<String> = None;
    let mut iters = 0usize;
    for line in text.lines() {
        let t = line.trim();
        let value_after_eq = |t: &str| t.split('=').nth(1).map(|v| v.trim().trim_end_matches(';').trim().to_string());
        if t.starts_with("objValPrimal") {
            primal = value_after_eq(t).and_then(|v| v.parse().ok());
        } else if t.starts_with("objValDual") {
            dual = value_after_eq(t).and_then(|v| v.parse().ok());
        } else if t.starts_with("phase.value") {
            phase = value_after_eq(t);
        } else if t.starts_with("iteration") {
            if let Some(v) = value_after_eq(t) {
                iters = v.parse().unwrap_or(0);
            }
        }
    }
    let phase = phase.ok_or_else(|| SdpError::Parse("missing phase.value".into()))?;
    let status = match phase.as_str() {
        "pdOPT" => SolveStatus::Optimal,
        "pdFEAS" | "pFEAS" | "dFEAS" => SolveStatus::NearOptimal,
        "pINF_dFEAS" | "pdINF" | "dUNBD" => SolveStatus::PrimalInfeasible,
        "pFEAS_dINF" | "pUNBD" => SolveStatus::DualInfeasible,
        _ => SolveStatus::NumericalFailure,
    };
    let needs_obj = matches!(status, SolveStatus::Optimal | SolveStatus::NearOptimal);
    if needs_obj && (primal.is_none() || dual.is_none()) {
        return Err(SdpError::Parse("missing objective values".into()));
    }
    let p = primal.unwrap_or(f64::NAN);
    let d = dual.unwrap_or(f64::NAN);
    Ok(SdpSolution {
        status,
        primal_objective: p,
        dual_objective: d,
        gap: (p - d).abs(),
        var_values: Vec::new(),
        block_matrices: Vec::new(),
        dual_blocks: Vec::new(),
        iterations: iters,
        primal_residual: f64::NAN,
        dual_residual: f64::NAN,
        detail: format!("sdpa phase {phase}"),
    })
}
