//! JSON shapes. Complex numbers are `[re, im]`, matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::domains::{TetraPoint, Tolerance};
use crate::error::{Error, Result};
use crate::feasibility::{default_probes, InterpolationProblem, KernelCertificate, Provenance};
use crate::hardy::RationalFunction;
use crate::linalg::CMat;
use crate::realization::{BlockContraction, CompletionReport, RealizedSchurFunction};
use crate::saltire::SampledKernelPair;
use crate::synthesis::SynthesisResult;
use crate::C64;

pub type Cx = [f64; 2];

pub fn cx(z: C64) -> Cx {
    [z.re, z.im]
}

pub fn from_cx(v: Cx) -> C64 {
    C64::new(v[0], v[1])
}

pub fn mat_to_json(a: &CMat) -> Vec<Vec<Cx>> {
    (0..a.nrows()).map(|r| (0..a.ncols()).map(|c| cx(a[(r, c)])).collect()).collect()
}

pub fn mat_from_json(rows: &[Vec<Cx>]) -> Result<CMat> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::ShapeMismatch("ragged matrix rows".into()));
    }
    Ok(CMat::from_fn(n, m, |r, c| from_cx(rows[r][c])))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub nodes: Vec<Cx>,
    pub targets: Vec<[Cx; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<Tolerance>,
}

fn probes_from(v: &Option<Vec<Cx>>) -> Result<[C64; 3]> {
    match v {
        None => Ok(default_probes()),
        Some(p) if p.len() == 3 => Ok([from_cx(p[0]), from_cx(p[1]), from_cx(p[2])]),
        Some(p) => Err(Error::InvalidProblem(format!("need exactly 3 probes, got {}", p.len()))),
    }
}

impl ProblemJson {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_problem(&self, tol_override: Option<Tolerance>) -> Result<InterpolationProblem> {
        let nodes = self.nodes.iter().map(|&v| from_cx(v)).collect();
        let targets =
            self.targets.iter().map(|t| TetraPoint::new(from_cx(t[0]), from_cx(t[1]), from_cx(t[2]))).collect();
        let tol = tol_override.or(self.tol).unwrap_or_default();
        InterpolationProblem::new(nodes, targets, probes_from(&self.probes)?, tol)
    }

    pub fn from_problem(p: &InterpolationProblem) -> Self {
        ProblemJson {
            nodes: p.nodes().iter().map(|&z| cx(z)).collect(),
            targets: p.targets().iter().map(|x| [cx(x.x1), cx(x.x2), cx(x.x3)]).collect(),
            probes: Some(p.probes().iter().map(|&z| cx(z)).collect()),
            tol: Some(*p.tol()),
        }
    }
}

/// Input of the μ-synthesis reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuProblemJson {
    pub nodes: Vec<Cx>,
    pub matrices: Vec<Vec<Vec<Cx>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<Tolerance>,
}

impl MuProblemJson {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn nodes(&self) -> Vec<C64> {
        self.nodes.iter().map(|&v| from_cx(v)).collect()
    }

    pub fn matrices(&self) -> Result<Vec<CMat>> {
        self.matrices.iter().map(|m| mat_from_json(m)).collect()
    }

    pub fn probes(&self) -> Result<[C64; 3]> {
        probes_from(&self.probes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: Vec<Vec<Cx>>,
    pub m: Vec<Vec<Cx>>,
    #[serde(default = "external")]
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_residual: Option<f64>,
}

fn external() -> Provenance {
    Provenance::External
}

impl CertificateJson {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn from_certificate(c: &KernelCertificate) -> Self {
        CertificateJson {
            n: mat_to_json(&c.n),
            m: mat_to_json(&c.m),
            provenance: c.provenance,
            equality_residual: c.equality_residual,
        }
    }

    pub fn to_certificate(&self) -> Result<KernelCertificate> {
        Ok(KernelCertificate {
            n: mat_from_json(&self.n)?,
            m: mat_from_json(&self.m)?,
            provenance: self.provenance,
            equality_residual: self.equality_residual,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockContractionJson {
    /// State dimension.
    pub m: usize,
    #[serde(rename = "L")]
    pub l: Vec<Vec<Cx>>,
}

impl BlockContractionJson {
    pub fn from_contraction(b: &BlockContraction) -> Self {
        BlockContractionJson { m: b.m, l: mat_to_json(&b.l) }
    }

    pub fn to_contraction(&self) -> Result<BlockContraction> {
        BlockContraction::new(self.m, mat_from_json(&self.l)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Vec<Cx>,
    pub den: Vec<Cx>,
}

impl RationalJson {
    pub fn from_rational(f: &RationalFunction) -> Self {
        RationalJson { num: f.num.iter().map(|&z| cx(z)).collect(), den: f.den.iter().map(|&z| cx(z)).collect() }
    }

    pub fn to_rational(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.num.iter().map(|&v| from_cx(v)).collect(), self.den.iter().map(|&v| from_cx(v)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelPairJson {
    pub nodes: Vec<Cx>,
    pub probes: Vec<Cx>,
    pub n: Vec<Vec<Cx>>,
    pub m: Vec<Vec<Cx>>,
}

impl KernelPairJson {
    pub fn from_pair(p: &SampledKernelPair) -> Self {
        KernelPairJson {
            nodes: p.nodes.iter().map(|&z| cx(z)).collect(),
            probes: p.probes.iter().map(|&z| cx(z)).collect(),
            n: mat_to_json(&p.n),
            m: mat_to_json(&p.m),
        }
    }

    pub fn to_pair(&self) -> Result<SampledKernelPair> {
        SampledKernelPair::new(
            self.nodes.iter().map(|&v| from_cx(v)).collect(),
            self.probes.iter().map(|&v| from_cx(v)).collect(),
            mat_from_json(&self.n)?,
            mat_from_json(&self.m)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeResidualJson {
    pub node: Cx,
    pub target: [Cx; 3],
    pub value: [Cx; 3],
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionJson {
    pub rank: usize,
    pub gram_excess: f64,
    pub gram_deficit: f64,
    pub raw_norm: f64,
    pub clipped: bool,
    pub interpolation_residual: f64,
}

impl From<&CompletionReport> for CompletionJson {
    fn from(c: &CompletionReport) -> Self {
        CompletionJson {
            rank: c.rank,
            gram_excess: c.gram_excess,
            gram_deficit: c.gram_deficit,
            raw_norm: c.raw_norm,
            clipped: c.clipped,
            interpolation_residual: c.interpolation_residual,
        }
    }
}

/// Synthesis output; `theta` is enough to rebuild the interpolant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisJson {
    pub theta: BlockContractionJson,
    pub nodes: Vec<NodeResidualJson>,
    pub lft_residual: f64,
    pub membership_sup: f64,
    pub contraction_margin: f64,
    pub completion: CompletionJson,
}

impl SynthesisJson {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn from_result(r: &SynthesisResult, problem: &InterpolationProblem) -> Result<Self> {
        let mut nodes = Vec::with_capacity(problem.n());
        for ((&lam, t), &res) in problem.nodes().iter().zip(problem.targets()).zip(&r.node_errors) {
            let v = r.eval(lam)?;
            nodes.push(NodeResidualJson {
                node: cx(lam),
                target: [cx(t.x1), cx(t.x2), cx(t.x3)],
                value: [cx(v.x1), cx(v.x2), cx(v.x3)],
                residual: res,
            });
        }
        Ok(SynthesisJson {
            theta: BlockContractionJson::from_contraction(&r.theta.l),
            nodes,
            lft_residual: r.lft_residual,
            membership_sup: r.membership_sup(),
            contraction_margin: r.contraction_margin,
            completion: (&r.completion).into(),
        })
    }

    pub fn theta(&self) -> Result<RealizedSchurFunction> {
        Ok(RealizedSchurFunction::new(self.theta.to_contraction()?))
    }
}
