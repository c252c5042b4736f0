//! Diagrams of finite probability spaces, entropy-vector geometry and
//! coupling distances.

pub mod coupling;
pub mod diagrams;
pub mod explorer;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod indexing;
pub mod rational;
pub mod spaces;

pub use coupling::{ikd_exact, ikd_greedy, kd, Coupling};
pub use diagrams::{full_diagram, Diagram, JointDistribution, TwoFanOfDiagrams};
pub use error::{Error, Result};
pub use geometry::{EntropyVector, InfoVector};
pub use groups::{FiniteAbelianGroup, GroupDiagram, Subgroup};
pub use indexing::{Fan, IndexingCategory, ObjectId};
pub use rational::Rational;
pub use spaces::{Base, Entropy, FiniteProbabilitySpace, Reduction};
