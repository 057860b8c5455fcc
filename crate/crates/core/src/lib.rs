//! Geometric 2-cocycles on path semigroups of model surfaces, their
//! taille-valued reductions, and the semigroup cohomology needed to tell
//! coboundaries from genuine classes.

pub mod geom;
pub mod paths;
pub mod cohomology;
pub mod deformation;
pub mod experiments;
