//! Error type shared by all core modules.

use core::fmt;

/// Errors produced by mesh validation, sphere geometry, and the solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A mesh needs at least three vertices and one triangle.
    EmptyMesh,
    /// A triangle references a vertex index outside the vertex array.
    VertexIndexOutOfRange { triangle: usize, index: usize },
    /// A triangle lists the same vertex twice.
    RepeatedVertex { triangle: usize },
    /// A vertex coordinate is NaN or infinite.
    NonFiniteCoordinate { vertex: usize },
    /// Triangle area is at or below the configured area floor.
    DegenerateTriangle { triangle: usize, area: f64 },
    /// An edge is shared by more than two triangles.
    NonManifoldEdge { edge: [usize; 2] },
    /// Two triangles traverse a shared edge in the same direction.
    InconsistentOrientation { edge: [usize; 2] },
    /// Replacement vertex positions do not match the mesh's vertex count.
    VertexCountMismatch { expected: usize, got: usize },
    /// The logarithmic map is undefined for antipodal points.
    AntipodalPoints,
    /// The arccos derivative is undefined for parallel unit vectors.
    ParallelVectors,
    /// Adjacent face normals are opposite: the surface is folded back onto
    /// itself at this edge and the signed distance has no value there.
    FoldedEdge { edge: [usize; 2] },
    /// Data vertex list does not match the mesh's vertex count.
    DataLengthMismatch { expected: usize, got: usize },
    /// Bregman variables are not keyed by the mesh's interior edge set.
    VariableKeyMismatch,
    /// Vertex mask covers a different number of vertices than the mesh.
    MaskLengthMismatch { expected: usize, got: usize },
    /// A mask refers to a vertex index outside the mesh.
    MaskIndexOutOfRange { index: usize },
    /// A gradient step kept violating the area floor after the maximum
    /// number of step-length halvings.
    StepRejected { triangle: usize, halvings: u32 },
    /// A solver parameter violates its positivity constraint.
    InvalidParameter { name: &'static str },
    /// A vertex has no incident face with positive area, so its normal
    /// (and therefore its noise direction) is undefined.
    UndefinedVertexNormal { vertex: usize },
    /// Meshes have different triangle connectivity.
    ConnectivityMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyMesh => write!(f, "mesh must have at least 3 vertices and 1 triangle"),
            Error::VertexIndexOutOfRange { triangle, index } => {
                write!(f, "triangle {triangle} references out-of-range vertex {index}")
            }
            Error::RepeatedVertex { triangle } => {
                write!(f, "triangle {triangle} lists a vertex twice")
            }
            Error::NonFiniteCoordinate { vertex } => {
                write!(f, "vertex {vertex} has a non-finite coordinate")
            }
            Error::DegenerateTriangle { triangle, area } => {
                write!(f, "triangle {triangle} is degenerate (area {area:e})")
            }
            Error::NonManifoldEdge { edge } => {
                write!(f, "edge ({}, {}) is shared by more than two triangles", edge[0], edge[1])
            }
            Error::InconsistentOrientation { edge } => write!(
                f,
                "edge ({}, {}) is traversed twice in the same direction; face orientations disagree",
                edge[0], edge[1]
            ),
            Error::VertexCountMismatch { expected, got } => {
                write!(f, "expected {expected} vertex positions, got {got}")
            }
            Error::AntipodalPoints => {
                write!(f, "logarithmic map is undefined for antipodal points")
            }
            Error::ParallelVectors => {
                write!(f, "arccos derivative is undefined for parallel unit vectors")
            }
            Error::FoldedEdge { edge } => write!(
                f,
                "faces across edge ({}, {}) have opposite normals (folded surface)",
                edge[0], edge[1]
            ),
            Error::DataLengthMismatch { expected, got } => {
                write!(f, "expected {expected} data vertices, got {got}")
            }
            Error::VariableKeyMismatch => {
                write!(f, "Bregman variables are not keyed by the mesh's interior edges")
            }
            Error::MaskLengthMismatch { expected, got } => {
                write!(f, "mask covers {got} vertices but the mesh has {expected}")
            }
            Error::MaskIndexOutOfRange { index } => {
                write!(f, "mask index {index} is out of range")
            }
            Error::StepRejected { triangle, halvings } => write!(
                f,
                "no valid gradient step after {halvings} halvings; triangle {triangle} keeps hitting the area floor"
            ),
            Error::InvalidParameter { name } => {
                write!(f, "solver parameter `{name}` violates its constraint")
            }
            Error::UndefinedVertexNormal { vertex } => {
                write!(f, "vertex {vertex} has no well-defined normal")
            }
            Error::ConnectivityMismatch => {
                write!(f, "meshes have different triangle connectivity")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
