use std::path::Path;

use moment_basis::MomentSystem;

use crate::error::DiscError;
use crate::grid::Grid;
use crate::state::FieldState;

const AXES: [&str; 2] = ["x", "y"];
const CELLS: [&str; 2] = ["j", "k"];
const VEL: [&str; 2] = ["U", "V"];

pub fn write_field_csv(path: &Path, grid: &Grid, state: &FieldState) -> Result<(), DiscError> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = CELLS[..grid.dim()].iter().map(|s| s.to_string()).collect();
    header.extend(AXES[..grid.dim()].iter().map(|s| s.to_string()));
    header.extend((0..state.n_vars).map(|k| format!("u_{k}")));
    w.write_record(&header)?;
    for j in 0..grid.n_cells() {
        let mut rec: Vec<String> = grid.position(j).iter().map(|p| p.to_string()).collect();
        rec.extend(grid.center(j).iter().map(|x| x.to_string()));
        rec.extend(state.cell(j).iter().map(|x| x.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_macro_csv(
    path: &Path,
    grid: &Grid,
    system: &MomentSystem,
    state: &FieldState,
) -> Result<(), DiscError> {
    let dim = grid.dim();
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = AXES[..dim].iter().map(|s| s.to_string()).collect();
    header.push("rho".into());
    header.extend(VEL[..dim].iter().map(|s| s.to_string()));
    header.push("T".into());
    header.extend((0..dim).map(|d| if dim == 1 { "q".to_string() } else { format!("q{}", AXES[d]) }));
    w.write_record(&header)?;
    for j in 0..grid.n_cells() {
        let m = system.extract_macro(state.cell(j))?;
        let mut rec: Vec<String> = grid.center(j).iter().map(|x| x.to_string()).collect();
        rec.push(m.rho.to_string());
        rec.extend(m.velocity[..dim].iter().map(|x| x.to_string()));
        rec.push(m.temperature.to_string());
        rec.extend(m.heat_flux[..dim].iter().map(|x| x.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
