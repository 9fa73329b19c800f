//! Parallelogram systems: exact solutions, contradiction certificates and the cone tests for
//! the parameterised 5-10 case.

pub mod cases;
pub mod cone;
pub mod contradiction;
pub mod final_case;
pub mod json;
pub mod octahedron;
pub mod system;

pub use cases::{run_all_cases, CaseRow, CaseStatus, CaseTable, Family};
pub use cone::{cone_test_pipeline, ConePipeline};
pub use contradiction::{analyze, detect_contradiction, verify_finding, ContradictionKind, ContradictionReport, Finding};
pub use final_case::{final_case_check, FinalCaseReport};
pub use octahedron::{octahedron_check, OctahedronFinding, OctahedronVariant};
pub use system::{LinearSystem, SolutionFamily, Solved, SystemError};
