//! Evaluation of one parameter point.

use clap::ValueEnum;
use qshannon::classical::{
    multi_species_scaling_report, one_particle_report, r_identical_scaling_report, two_distinguishable_report,
    two_identical_report, ClassicalConfig, Core,
};
use qshannon::free::{boson, fermion};
use qshannon::number_dist::{classical_binomial_entropy, number_report};
use qshannon::sigma_x;
use qshannon::xxx;
use qshannon::{
    ChainGeometry, EntropyReport, Error, EvaluationMode, IntegrationOptions, MomentumPair, Result, Statistics,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Bos,
    Fer,
    Xxx,
    Classical,
    Sigmax,
    Numdist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum State {
    K,
    K2,
    K1k2,
    #[value(name = "caseI")]
    CaseI,
    #[value(name = "caseII")]
    CaseII,
    #[value(name = "caseIIIa")]
    CaseIIIa,
    #[value(name = "caseIIIb")]
    CaseIIIb,
    Magnon,
    Ground,
    RIdentical,
    MultiSpecies,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Bos => "bos",
            Model::Fer => "fer",
            Model::Xxx => "xxx",
            Model::Classical => "classical",
            Model::Sigmax => "sigmax",
            Model::Numdist => "numdist",
        }
    }
}

impl State {
    pub fn name(self) -> &'static str {
        match self {
            State::K => "k",
            State::K2 => "k2",
            State::K1k2 => "k1k2",
            State::CaseI => "caseI",
            State::CaseII => "caseII",
            State::CaseIIIa => "caseIIIa",
            State::CaseIIIb => "caseIIIb",
            State::Magnon => "magnon",
            State::Ground => "ground",
            State::RIdentical => "r-identical",
            State::MultiSpecies => "multi-species",
        }
    }
}

/// Everything a single evaluation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub model: Model,
    pub state: State,
    pub mode: EvaluationMode,
    pub length: usize,
    pub ell: usize,
    /// Exact ratio for formulas that take `x` directly; `ℓ/L` otherwise.
    pub x: Option<f64>,
    pub k1: i64,
    pub k2: i64,
    pub i1: i64,
    pub i2: i64,
    pub i: i64,
    pub r: u32,
    pub core: Core,
    pub species: Vec<u32>,
    pub stats: Statistics,
    pub tol: f64,
    pub max_l_sigmax: usize,
}

impl Point {
    pub fn geometry(&self) -> Result<ChainGeometry> {
        ChainGeometry::new(self.length, self.ell)
    }

    pub fn ratio(&self) -> f64 {
        self.x.unwrap_or(self.ell as f64 / self.length as f64)
    }

    fn opts(&self) -> IntegrationOptions {
        IntegrationOptions::with_tolerance(self.tol)
    }

    fn pair(&self) -> Result<MomentumPair> {
        MomentumPair::new(self.length, self.k1, self.k2)
    }

    fn unsupported(&self) -> Error {
        Error::Parameter(format!(
            "model {} has no state {}",
            self.model.name(),
            self.state.name()
        ))
    }
}

pub fn evaluate(p: &Point) -> Result<EntropyReport> {
    let geom = p.geometry()?;
    match (p.model, p.state) {
        (Model::Bos, State::K) => Ok(boson::single_particle_report(geom)),
        (Model::Bos, State::K2) => boson::kk_report(geom, p.mode),
        (Model::Bos, State::K1k2) => boson::k1k2_report_with(geom, &p.pair()?, p.mode, &p.opts()),
        (Model::Fer, State::K) => Ok(fermion::fer_single_particle_report(geom)),
        (Model::Fer, State::K1k2) => fermion::fer_k1k2_report_with(geom, &p.pair()?, p.mode, &p.opts()),
        (Model::Xxx, State::Magnon) => Ok(xxx::single_magnon_report(geom)),
        (Model::Xxx, State::CaseI) => xxx::case_i_report(geom, p.mode),
        (Model::Xxx, State::CaseII) => {
            let sol = xxx::solve_case_ii(p.length, p.i1, p.i2)?;
            match p.mode {
                EvaluationMode::Exact => xxx::case_ii_report(geom, &sol),
                EvaluationMode::Scaling => Ok(xxx::case_ii_limit_report_with(geom, &sol, &p.opts())?.1),
                other => Err(Error::Parameter(format!("case II has no {other} mode (use exact or scaling)"))),
            }
        }
        (Model::Xxx, State::CaseIIIa) => {
            let sol = xxx::case_iiia_params(p.length, p.i)?;
            xxx::case_iiia_report_with(geom, &sol, p.mode, &p.opts())
        }
        (Model::Xxx, State::CaseIIIb) => {
            let sol = xxx::case_iiib_params(p.length, p.i)?;
            xxx::case_iiib_report_with(geom, &sol, p.mode, &p.opts())
        }
        (Model::Classical, State::RIdentical) => match p.mode {
            EvaluationMode::Exact if p.r <= 2 => classical_exact(geom, &[p.r], p.core),
            EvaluationMode::Scaling | EvaluationMode::Exact => r_identical_scaling_report(p.ratio(), p.length, p.r),
            other => Err(Error::Parameter(format!("classical particles have no {other} mode"))),
        },
        (Model::Classical, State::MultiSpecies) => {
            let config = ClassicalConfig::new(p.core, p.species.clone())?;
            match p.mode {
                EvaluationMode::Exact if config.total() <= 2 => classical_exact(geom, &p.species, p.core),
                EvaluationMode::Scaling => multi_species_scaling_report(p.ratio(), p.length, &config),
                EvaluationMode::Exact => Err(Error::Parameter(
                    "exact classical tables cover at most two particles; use --mode scaling".into(),
                )),
                other => Err(Error::Parameter(format!("classical particles have no {other} mode"))),
            }
        }
        (Model::Sigmax, State::Ground) => Ok(sigma_x::ground_state_report(geom)),
        (Model::Sigmax, State::Magnon) => {
            let i = usize::try_from(p.i).map_err(|_| Error::Parameter(format!("I = {} must be nonnegative", p.i)))?;
            let special = i == 0 || 2 * i == p.length;
            if p.length > p.max_l_sigmax && special {
                sigma_x::special_i_report(geom, i)
            } else {
                sigma_x::magnon_report(geom, i, p.max_l_sigmax)
            }
        }
        (Model::Numdist, State::K1k2) => number_report(geom, &p.pair()?, p.stats),
        (Model::Numdist, State::RIdentical) => {
            let h = classical_binomial_entropy(p.r, p.ratio());
            Ok(EntropyReport::new(h, h, h, EvaluationMode::Exact))
        }
        _ => Err(p.unsupported()),
    }
}

fn classical_exact(geom: ChainGeometry, species: &[u32], core: Core) -> Result<EntropyReport> {
    let mode = EvaluationMode::Exact;
    match species {
        [1] => one_particle_report(geom, mode),
        [2] => two_identical_report(geom, core, mode),
        [1, 1] => two_distinguishable_report(geom, core, mode),
        _ => Err(Error::Parameter(format!("no exact classical table for species {species:?}"))),
    }
}
