//! Figure data, one CSV per panel.
//!
//! Ids 2 to 4 are free bosons (total, block, mutual information), 5 to 7 free
//! fermions, 8 XXX case II, 9 case IIIa, 10 case IIIb.

use std::f64::consts::LN_2;

use anyhow::{bail, Result};
use qshannon::free::{
    boson, exceptional_mi, exceptional_sub, exceptional_sum, fermion, sub_entropy_scaling, total_entropy_exact,
    universal_mi, universal_sub, universal_total,
};
use qshannon::xxx::{self, BetheCase, BetheSolution};
use qshannon::{
    ChainGeometry, EntropyReport, EvaluationMode, ExceptionalMomentum, IntegrationOptions, MomentumPair, Statistics,
};
use rayon::prelude::*;

use crate::output::Panel;

/// `|k12|` values drawn for the `|k12| ≪ L` families.
const SMALL_K: [i64; 5] = [1, 2, 3, 5, 10];
/// `n` of the exceptional families `|k12| = L/n`.
const EXCEPTIONAL_N: [u64; 6] = [2, 3, 4, 5, 6, 8];

pub const IDS: std::ops::RangeInclusive<u32> = 2..=10;

#[derive(Clone, Copy)]
enum Quantity {
    Block,
    Mutual,
}

pub fn panels(id: u32, opts: &IntegrationOptions) -> Result<Vec<Panel>> {
    Ok(match id {
        2 => total_panels(Statistics::Boson),
        3 => block_panels(Statistics::Boson, Quantity::Block, opts)?,
        4 => block_panels(Statistics::Boson, Quantity::Mutual, opts)?,
        5 => total_panels(Statistics::Fermion),
        6 => block_panels(Statistics::Fermion, Quantity::Block, opts)?,
        7 => block_panels(Statistics::Fermion, Quantity::Mutual, opts)?,
        8 => case_ii_panels(opts)?,
        9 => bound_panels(BetheCase::IIIa, opts)?,
        10 => bound_panels(BetheCase::IIIb, opts)?,
        _ => bail!("unknown figure id {id}; known ids are 2 to 10"),
    })
}

fn panel(file: String, header: String, columns: &[&str], rows: Vec<Vec<Option<f64>>>) -> Panel {
    Panel {
        file,
        header,
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    }
}

fn exceptional_total_n(length: usize, n: u64, stats: Statistics) -> f64 {
    2.0 * (length as f64).ln() - 2.0 * LN_2 - 2.0 / n as f64 * exceptional_sum(n, stats)
}

fn total_panels(stats: Statistics) -> Vec<Panel> {
    const L: usize = 840;
    let univ = universal_total(L);
    let left = (1..=(L / 2) as i64)
        .into_par_iter()
        .map(|k| {
            let pair = MomentumPair::from_difference(L, k).unwrap();
            let n = ExceptionalMomentum::from_pair(&pair).n();
            vec![
                Some(k as f64),
                Some(total_entropy_exact(&pair, stats)),
                Some(univ),
                Some(n as f64),
                Some(exceptional_total_n(L, n, stats)),
            ]
        })
        .collect();
    let right = (2..=1000u64)
        .map(|n| vec![Some(n as f64), Some(exceptional_total_n(L, n, stats)), Some(univ)])
        .collect();
    vec![
        panel(
            format!("fig{}_left.csv", fig_id(stats, 0)),
            format!("{stats},k1k2,total-vs-k12-L{L}"),
            &["k12", "exact", "universal", "n", "exceptional"],
            left,
        ),
        panel(
            format!("fig{}_right.csv", fig_id(stats, 0)),
            format!("{stats},k1k2,exceptional-total-vs-n-L{L}"),
            &["n", "exceptional", "universal"],
            right,
        ),
    ]
}

fn fig_id(stats: Statistics, offset: u32) -> u32 {
    offset
        + match stats {
            Statistics::Boson => 2,
            Statistics::Fermion => 5,
        }
}

fn free_report(geom: ChainGeometry, pair: &MomentumPair, stats: Statistics, mode: EvaluationMode, opts: &IntegrationOptions) -> qshannon::Result<EntropyReport> {
    match stats {
        Statistics::Boson => boson::k1k2_report_with(geom, pair, mode, opts),
        Statistics::Fermion => fermion::fer_k1k2_report_with(geom, pair, mode, opts),
    }
}

fn block_panels(stats: Statistics, q: Quantity, opts: &IntegrationOptions) -> Result<Vec<Panel>> {
    const L: usize = 240;
    let id = fig_id(stats, if matches!(q, Quantity::Block) { 1 } else { 2 });
    let pick = |rep: &EntropyReport| match q {
        Quantity::Block => rep.h_sub,
        Quantity::Mutual => rep.mi,
    };
    let left: Vec<Vec<Option<f64>>> = (1..L)
        .into_par_iter()
        .map(|ell| -> qshannon::Result<Vec<Option<f64>>> {
            let geom = ChainGeometry::new(L, ell)?;
            let x = geom.ratio();
            let mut row = vec![Some(ell as f64), Some(x)];
            for k in SMALL_K {
                let pair = MomentumPair::from_difference(L, k)?;
                row.push(Some(pick(&free_report(geom, &pair, stats, EvaluationMode::Exact, opts)?)));
            }
            for k in SMALL_K {
                let v = match q {
                    Quantity::Block => sub_entropy_scaling(x, L, k as u64, stats, opts)?,
                    Quantity::Mutual => {
                        let pair = MomentumPair::from_difference(L, k)?;
                        free_report(geom, &pair, stats, EvaluationMode::Scaling, opts)?.mi
                    }
                };
                row.push(Some(v));
            }
            row.push(Some(match q {
                Quantity::Block => universal_sub(x, L),
                Quantity::Mutual => universal_mi(x),
            }));
            Ok(row)
        })
        .collect::<qshannon::Result<_>>()?;
    let right: Vec<Vec<Option<f64>>> = (1..L)
        .into_par_iter()
        .map(|ell| -> qshannon::Result<Vec<Option<f64>>> {
            let geom = ChainGeometry::new(L, ell)?;
            let x = geom.ratio();
            let mut row = vec![Some(ell as f64), Some(x)];
            let mut limits = Vec::new();
            for n in EXCEPTIONAL_N {
                let pair = MomentumPair::from_difference(L, (L as u64 / n) as i64)?;
                let em = ExceptionalMomentum::new(1, n, L)?;
                row.push(Some(pick(&free_report(geom, &pair, stats, EvaluationMode::Exact, opts)?)));
                limits.push(Some(match q {
                    Quantity::Block => exceptional_sub(x, L, &em, stats),
                    Quantity::Mutual => exceptional_mi(x, &em, stats),
                }));
            }
            row.extend(limits);
            row.push(Some(match q {
                Quantity::Block => universal_sub(x, L),
                Quantity::Mutual => universal_mi(x),
            }));
            Ok(row)
        })
        .collect::<qshannon::Result<_>>()?;

    let what = match q {
        Quantity::Block => "block-entropy",
        Quantity::Mutual => "mutual-information",
    };
    let mut left_cols = vec!["ell".to_string(), "x".to_string()];
    left_cols.extend(SMALL_K.iter().map(|k| format!("exact_k{k}")));
    left_cols.extend(SMALL_K.iter().map(|k| format!("scaling_k{k}")));
    left_cols.push("universal".into());
    let mut right_cols = vec!["ell".to_string(), "x".to_string()];
    right_cols.extend(EXCEPTIONAL_N.iter().map(|n| format!("exact_n{n}")));
    right_cols.extend(EXCEPTIONAL_N.iter().map(|n| format!("exceptional_n{n}")));
    right_cols.push("universal".into());
    Ok(vec![
        Panel {
            file: format!("fig{id}_left.csv"),
            header: format!("{stats},k1k2,{what}-small-k12-L{L}"),
            columns: left_cols,
            rows: left,
        },
        Panel {
            file: format!("fig{id}_right.csv"),
            header: format!("{stats},k1k2,{what}-exceptional-k12-L{L}"),
            columns: right_cols,
            rows: right,
        },
    ])
}

/// Representatives of the three case II limits at chain length `l`.
fn case_ii_states(l: usize) -> [(i64, i64); 3] {
    let l = l as i64;
    [(0, 1), (l / 4, l / 4 + 2), (l / 8, l / 2)]
}

fn case_ii_panels(opts: &IntegrationOptions) -> Result<Vec<Panel>> {
    const L: usize = 240;
    let lengths: Vec<usize> = (40..=L).step_by(20).collect();
    let total = lengths
        .par_iter()
        .map(|&l| -> qshannon::Result<Vec<Option<f64>>> {
            let mut row = vec![Some(l as f64)];
            for (i1, i2) in case_ii_states(l) {
                let sol = xxx::solve_case_ii(l, i1, i2)?;
                row.push(Some(xxx::case_ii_total_table(&sol)?.entropy()));
            }
            row.push(Some(universal_total(l)));
            Ok(row)
        })
        .collect::<qshannon::Result<_>>()?;

    let sols = case_ii_states(L)
        .iter()
        .map(|&(i1, i2)| xxx::solve_case_ii(L, i1, i2))
        .collect::<qshannon::Result<Vec<BetheSolution>>>()?;
    let block_rows = (1..L)
        .into_par_iter()
        .map(|ell| -> qshannon::Result<(Vec<Option<f64>>, Vec<Option<f64>>)> {
            let geom = ChainGeometry::new(L, ell)?;
            let x = geom.ratio();
            let mut sub = vec![Some(ell as f64), Some(x)];
            let mut mi = sub.clone();
            for sol in &sols {
                let rep = xxx::case_ii_report(geom, sol)?;
                sub.push(Some(rep.h_sub));
                mi.push(Some(rep.mi));
            }
            let pair = MomentumPair::from_difference(L, 1)?;
            for stats in [Statistics::Boson, Statistics::Fermion] {
                let rep = free_report(geom, &pair, stats, EvaluationMode::Scaling, opts)?;
                sub.push(Some(rep.h_sub));
                mi.push(Some(rep.mi));
            }
            sub.push(Some(universal_sub(x, L)));
            mi.push(Some(universal_mi(x)));
            Ok((sub, mi))
        })
        .collect::<qshannon::Result<Vec<_>>>()?;
    let (sub, mi): (Vec<_>, Vec<_>) = block_rows.into_iter().unzip();

    let block_cols = ["ell", "x", "exact_I0_1", "exact_IL4_L4+2", "exact_IL8_L2", "bos_k1", "fer_k1", "universal"];
    Ok(vec![
        panel(
            "fig8_total.csv".into(),
            "xxx,caseII,total-vs-L".into(),
            &["L", "exact_I0_1", "exact_IL4_L4+2", "exact_IL8_L2", "universal"],
            total,
        ),
        panel("fig8_block.csv".into(), format!("xxx,caseII,block-entropy-L{L}"), &block_cols, sub),
        panel("fig8_mi.csv".into(), format!("xxx,caseII,mutual-information-L{L}"), &block_cols, mi),
    ])
}

fn bound_panels(case: BetheCase, opts: &IntegrationOptions) -> Result<Vec<Panel>> {
    const L: usize = 840;
    let geom = ChainGeometry::new(L, L / 2)?;
    let numbers: Vec<i64> = match case {
        BetheCase::IIIa => (xxx::lowest_iiia_number(L)..(L as i64 / 2)).step_by(2).collect(),
        _ => (2..=(L as i64 / 2)).step_by(2).collect(),
    };
    let rows = numbers
        .par_iter()
        .map(|&i| -> qshannon::Result<[Vec<Option<f64>>; 3]> {
            let (sol, report): (_, fn(_, &_, _, &_) -> _) = match case {
                BetheCase::IIIa => (xxx::case_iiia_params(L, i)?, xxx::case_iiia_report_with),
                _ => (xxx::case_iiib_params(L, i)?, xxx::case_iiib_report_with),
            };
            let exact = report(geom, &sol, EvaluationMode::Exact, opts)?;
            let tight = report(geom, &sol, EvaluationMode::Tight, opts)?;
            let loose = report(geom, &sol, EvaluationMode::Loose, opts).ok();
            let head = [Some(i as f64), Some(i as f64 / L as f64), Some(sol.v), Some(sol.u)];
            let build = |f: fn(&EntropyReport) -> f64| {
                let mut row = head.to_vec();
                row.extend([Some(f(&exact)), Some(f(&tight)), loose.as_ref().map(f)]);
                row
            };
            Ok([build(|r| r.h_total), build(|r| r.h_sub), build(|r| r.mi)])
        })
        .collect::<qshannon::Result<Vec<_>>>()?;
    let id = if case == BetheCase::IIIa { 9 } else { 10 };
    let cols = ["I", "I_over_L", "v", "u", "exact", "tight", "loose"];
    let mut split: [Vec<Vec<Option<f64>>>; 3] = Default::default();
    for [a, b, c] in rows {
        split[0].push(a);
        split[1].push(b);
        split[2].push(c);
    }
    let [total, sub, mi] = split;
    Ok(vec![
        panel(format!("fig{id}_total.csv"), format!("xxx,case{case},total-L{L}"), &cols, total),
        panel(format!("fig{id}_block.csv"), format!("xxx,case{case},block-entropy-L{L}-x0.5"), &cols, sub),
        panel(format!("fig{id}_mi.csv"), format!("xxx,case{case},mutual-information-L{L}-x0.5"), &cols, mi),
    ])
}
