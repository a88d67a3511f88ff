use ibr_dynamics::dynamics::FieldKind;
use ibr_dynamics::flow::{poincare_returns, IntegrationOptions};
use ibr_dynamics::game::PopulationState;
use ibr_dynamics::presets;

#[test]
fn probe() {
    let a1 = presets::preset("table5-A1").unwrap();
    let x0 = PopulationState::new(vec![0.36, 0.33, 0.31]).unwrap();
    let opts = IntegrationOptions::default();
    let ret = poincare_returns(&a1, FieldKind::Ibr, &x0, (1, 2), 4, 200.0, &opts).unwrap();
    println!("A1 crossings: {:?}", ret.distances());
    for c in &ret.crossings {
        println!("  t={} state={:?}", c.t, c.state.as_slice());
    }
    let b3 = presets::preset("table5-B3").unwrap();
    let mid = PopulationState::new(vec![0.4, 0.35, 0.25]).unwrap();
    let ret = poincare_returns(&b3, FieldKind::Ibr, &mid, (1, 2), 4, 200.0, &opts).unwrap();
    println!("B3 crossings: {:?}", ret.distances());
}
