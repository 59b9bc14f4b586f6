//! Subspace and subset metrics on words over finite fields, together with
//! the rank-metric, subspace and folded code constructions built on them.

pub mod bignum;
pub mod bounds;
pub mod channel;
pub mod derived;
pub mod error;
pub mod extlin;
pub mod field;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod provenance;
pub mod rank_metric;
pub mod subspace_codes;
pub mod suites;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use linalg::{FqMatrix, Subspace};
pub use metrics::{Metric, MetricReport, SearchLimit, VectorCode, Word};
pub use provenance::Provenance;
pub use rank_metric::{LinearizedPoly, RankCode, RankDistribution};
pub use subspace_codes::SubspaceCode;
