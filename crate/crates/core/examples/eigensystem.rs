//! Closed-form spectrum of the three-qubit Hamiltonian against dense
//! diagonalization.

use thermal_transistor::model::{build_hamiltonian, EigenSystem, MixingAngles, DIM};
use thermal_transistor::SystemParams;

fn main() -> thermal_transistor::Result<()> {
    let params = SystemParams::reference();
    let analytic = EigenSystem::analytic(&params)?;
    let numeric = EigenSystem::numeric(&params)?.aligned_to(&analytic);
    let h = build_hamiltonian(&params)?;

    let beta = MixingAngles::new(&params);
    println!("mixing angles: {beta:?}");
    println!("{:>3} {:>22} {:>22}", "k", "closed form", "diagonalization");
    for k in 0..DIM {
        println!(
            "{:>3} {:>22.15} {:>22.15}",
            k + 1,
            analytic.eigenvalues[k],
            numeric.eigenvalues[k]
        );
    }
    println!("|H v - e v|_max = {:.2e}", analytic.residual(&h));
    println!(
        "eigenvector subspace distance = {:.2e}",
        analytic.subspace_distance(&numeric)
    );
    println!("smallest Bohr-frequency gap = {:.6}", analytic.min_bohr_gap());
    Ok(())
}
