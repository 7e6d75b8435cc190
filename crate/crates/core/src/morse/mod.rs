//! Vector fields, their flow graphs, basic sets, and the standing hypotheses
//! (cellularity and admissibility).

mod decomposition;
mod field;
mod flow;
mod hypotheses;

pub use decomposition::{basic_sets, BasicSet, BasicSetKind, MorseDecomposition};
pub use field::{validate_vector_field, vector_field_from_ids, FieldError, VectorField};
pub use flow::{build_flow_graph, EdgeKind, FlowEdge, FlowGraph};
pub use hypotheses::{
    admissibility_link, check_admissibility, check_cellular, AdmissibilityCheck,
    AdmissibilityVerdict, CellCheck, CellStatus, CellularityVerdict,
};
