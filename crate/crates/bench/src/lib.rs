//! Shared parameter sets for the benchmarks.

use planar_vacuum::CoulombSystem;

/// Subcritical massive system used by the solution benchmarks.
pub fn massive_system() -> CoulombSystem {
    CoulombSystem::massive(0.3, 1.0).expect("valid parameters")
}

/// Massless system inside the two-channel supercritical window.
pub fn window_system() -> CoulombSystem {
    CoulombSystem::massless(1.0, 0.3).expect("valid parameters")
}
