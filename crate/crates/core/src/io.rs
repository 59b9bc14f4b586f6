//! Canonical JSON files for every code type, tagged by `"kind"`.

use serde::{Deserialize, Serialize};

use crate::derived::{DifferenceSet, FoldedCode};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::Subspace;
use crate::metrics::{FoldedWord, VectorCode, Word};
use crate::provenance::Provenance;
use crate::rank_metric::{LinearizedPoly, RankCode};
use crate::subspace_codes::SubspaceCode;

#[derive(Clone, Debug, PartialEq)]
pub enum CodeFile {
    Vector(VectorCode),
    Subspace(SubspaceCode),
    Rank(RankCode),
    Folded(FoldedCode),
    DifferenceSet(DifferenceSet),
}

impl CodeFile {
    pub fn kind(&self) -> &'static str {
        match self {
            CodeFile::Vector(_) => "vector_code",
            CodeFile::Subspace(_) => "subspace_code",
            CodeFile::Rank(_) => "rank_code",
            CodeFile::Folded(_) => "folded_code",
            CodeFile::DifferenceSet(_) => "difference_set",
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawFile::from(self);
        let mut s = serde_json::to_string_pretty(&raw).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawFile {
    VectorCode(RawVector),
    SubspaceCode(RawSubspaceCode),
    RankCode(RawRank),
    FoldedCode(RawFolded),
    DifferenceSet(RawDifferenceSet),
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    field: FieldCtx,
    length: usize,
    codewords: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<Vec<Word>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct RawBasis {
    basis: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawSubspaceCode {
    q: u32,
    ambient: usize,
    constant_dim: Option<usize>,
    declared_distance: usize,
    subspaces: Vec<RawBasis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct RawRankMember {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<FieldElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct RawRank {
    field: FieldCtx,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source_field: Option<FieldCtx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    rows: usize,
    cols: usize,
    linear: bool,
    declared_distance: usize,
    members: Vec<RawRankMember>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct RawFolded {
    field: FieldCtx,
    block_len: usize,
    codewords: Vec<Vec<Vec<FieldElement>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct RawDifferenceSet {
    field: FieldCtx,
    members: Vec<FieldElement>,
    v: u64,
    k: usize,
    lambda: usize,
}

impl From<&CodeFile> for RawFile {
    fn from(f: &CodeFile) -> Self {
        match f {
            CodeFile::Vector(c) => RawFile::VectorCode(RawVector {
                field: c.ctx().clone(),
                length: c.length(),
                codewords: c.codewords().to_vec(),
                generator: c.generator().map(|g| g.to_vec()),
                provenance: c.provenance.clone(),
            }),
            CodeFile::Subspace(c) => RawFile::SubspaceCode(RawSubspaceCode {
                q: c.q(),
                ambient: c.ambient(),
                constant_dim: c.constant_dim(),
                declared_distance: c.declared_distance(),
                subspaces: c.members().iter().map(|m| RawBasis { basis: m.basis().row_vecs() }).collect(),
                provenance: c.provenance.clone(),
            }),
            CodeFile::Rank(c) => RawFile::RankCode(RawRank {
                field: c.field().clone(),
                source_field: c.source().cloned(),
                t: c.t(),
                rows: c.rows(),
                cols: c.cols(),
                linear: c.is_linear(),
                declared_distance: c.declared_distance(),
                members: if c.polys().is_empty() {
                    c.matrices()
                        .iter()
                        .map(|m| RawRankMember { coeffs: None, matrix: Some(m.row_vecs()) })
                        .collect()
                } else {
                    c.polys()
                        .iter()
                        .map(|p| RawRankMember { coeffs: Some(p.coeffs().to_vec()), matrix: None })
                        .collect()
                },
                provenance: c.provenance.clone(),
            }),
            CodeFile::Folded(c) => RawFile::FoldedCode(RawFolded {
                field: c.ctx.clone(),
                block_len: c.block_len,
                codewords: c.codewords.iter().map(|w| w.blocks.clone()).collect(),
                provenance: c.provenance.clone(),
            }),
            CodeFile::DifferenceSet(d) => RawFile::DifferenceSet(RawDifferenceSet {
                field: d.ctx.clone(),
                members: d.members.clone(),
                v: d.v,
                k: d.k,
                lambda: d.lambda,
            }),
        }
    }
}

impl TryFrom<RawFile> for CodeFile {
    type Error = Error;

    fn try_from(raw: RawFile) -> Result<Self> {
        match raw {
            RawFile::VectorCode(r) => {
                let code = match r.generator {
                    Some(g) => {
                        let c = VectorCode::linear(r.field, g)?;
                        if c.codewords() != r.codewords.as_slice() {
                            return Err(Error::Parse("codewords do not match the generator span".into()));
                        }
                        c
                    }
                    None => VectorCode::new(r.field, r.length, r.codewords)?,
                };
                if code.length() != r.length {
                    return Err(Error::LengthMismatch { expected: r.length, found: code.length() });
                }
                Ok(CodeFile::Vector(match r.provenance {
                    Some(p) => code.with_provenance(p),
                    None => code,
                }))
            }
            RawFile::SubspaceCode(r) => {
                let members = r
                    .subspaces
                    .into_iter()
                    .map(|b| Subspace::from_rref(r.q, r.ambient, b.basis))
                    .collect::<Result<Vec<_>>>()?;
                let code = SubspaceCode::new(r.q, r.ambient, members, r.declared_distance)?;
                if code.constant_dim() != r.constant_dim && !(code.is_empty() && r.constant_dim.is_none()) {
                    return Err(Error::Parse("constant_dim disagrees with the members".into()));
                }
                Ok(CodeFile::Subspace(match r.provenance {
                    Some(p) => code.with_provenance(p),
                    None => code,
                }))
            }
            RawFile::RankCode(r) => {
                let code = if r.members.iter().all(|m| m.coeffs.is_some()) {
                    let polys = r.members.into_iter().map(|m| LinearizedPoly::new(m.coeffs.unwrap())).collect();
                    RankCode::from_polys(r.field, r.source_field, polys, r.declared_distance, r.linear)?
                } else {
                    let q = r.field.q();
                    let matrices = r
                        .members
                        .into_iter()
                        .map(|m| {
                            let rows = m.matrix.ok_or_else(|| Error::Parse("member without coeffs or matrix".into()))?;
                            crate::linalg::FqMatrix::from_rows(q, r.cols, rows)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    RankCode::from_matrices(r.field, r.rows, r.cols, matrices, r.declared_distance)?
                };
                if (code.rows(), code.cols()) != (r.rows, r.cols) {
                    return Err(Error::Parse("rows/cols disagree with the fields".into()));
                }
                Ok(CodeFile::Rank(match r.provenance {
                    Some(p) => code.with_provenance(p),
                    None => code,
                }))
            }
            RawFile::FoldedCode(r) => {
                let words = r
                    .codewords
                    .into_iter()
                    .map(|blocks| FoldedWord { block_len: r.block_len, blocks })
                    .collect();
                let code = FoldedCode::new(r.field, r.block_len, words)?;
                Ok(CodeFile::Folded(match r.provenance {
                    Some(p) => code.with_provenance(p),
                    None => code,
                }))
            }
            RawFile::DifferenceSet(r) => {
                let d = DifferenceSet::new(r.field, r.members)?;
                if (d.v, d.k, d.lambda) != (r.v, r.k, r.lambda) {
                    return Err(Error::Parse(format!(
                        "file claims ({}, {}, {}) but the set is ({}, {}, {})",
                        r.v, r.k, r.lambda, d.v, d.k, d.lambda
                    )));
                }
                Ok(CodeFile::DifferenceSet(d))
            }
        }
    }
}
