//! Zig-zag diagrams of filtered complexes, pre-morphisms and ho-morphisms,
//! their homotopies, diagram cylinders and rectification.

mod cylinder;
mod ho;
mod premorphism;
mod shape;

pub use cylinder::{
    composition_diagram, diagram_cone, diagram_double_cylinder, factorize, homotopy_wheel, induced_cylinder_map,
    rectify, zero_diagram, DiagramCylinder, Factorization, Span,
};
pub use ho::{check_ho_homotopy, cycles, fibrant_lift, homotopy_classes_dim, solve_ho_homotopy, HoHomotopy};
pub use premorphism::{PreMorphism, PreSlot};
pub use shape::{Arrow, Diagram, VertexKind, ZigzagShape};

#[cfg(test)]
mod tests;
