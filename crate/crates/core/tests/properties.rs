//! Property tests for the invariants that tie the modules together.

use gadsim_core::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

/// A state from a Bloch vector strictly inside the unit ball.
fn bloch_state(x: f64, y: f64, z: f64) -> DensityMatrix {
    let m = Mat2::new([
        [C64::new(0.5 * (1.0 + z), 0.0), C64::new(0.5 * x, -0.5 * y)],
        [C64::new(0.5 * x, 0.5 * y), C64::new(0.5 * (1.0 - z), 0.0)],
    ]);
    DensityMatrix::new(m).expect("Bloch ball point is a valid state")
}

fn density_matrix() -> impl Strategy<Value = DensityMatrix> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("inside the Bloch ball", |(x, y, z)| {
            x * x + y * y + z * z <= 0.98
        })
        .prop_map(|(x, y, z)| bloch_state(x, y, z))
}

fn unit_interval() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

proptest! {
    #[test]
    fn partial_trace_undoes_the_tensor_product(
        signal in density_matrix(),
        idler in density_matrix(),
    ) {
        let joint = signal.mat().kron(&idler.mat());
        let reduced = partial_trace_idler(&joint).unwrap();
        // Tr(idler) = 1, so the reduction gives back the signal factor.
        prop_assert!(reduced.mat().max_abs_diff(&signal.mat()) <= 1e-12);
    }

    #[test]
    fn trace_distance_is_a_bounded_metric(
        a in density_matrix(),
        b in density_matrix(),
    ) {
        let d_ab = trace_distance(&a, &b);
        let d_ba = trace_distance(&b, &a);
        prop_assert!((d_ab - d_ba).abs() <= 1e-15);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d_ab));
        prop_assert!(trace_distance(&a, &a) <= 1e-12);
        if d_ab <= 1e-12 {
            prop_assert!(a.mat().max_abs_diff(&b.mat()) <= 1e-11);
        }
    }

    #[test]
    fn channel_preserves_the_trace(
        rho in density_matrix(),
        xi in unit_interval(),
        p in unit_interval(),
    ) {
        let k = kraus_gad(&GadParams::new(xi, p).unwrap());
        let out = apply_channel(&k, &rho).unwrap();
        prop_assert!((out.mat().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(out.mat().trace().im.abs() <= 1e-12);
    }

    #[test]
    fn kraus_sum_and_closed_form_agree(
        rho in density_matrix(),
        xi in unit_interval(),
        p in unit_interval(),
    ) {
        let params = GadParams::new(xi, p).unwrap();
        let via_kraus = apply_channel(&kraus_gad(&params), &rho).unwrap();
        let via_formula = gad_closed_form(&rho, &params).unwrap();
        prop_assert!(via_kraus.mat().max_abs_diff(&via_formula.mat()) <= 1e-12);
    }

    #[test]
    fn bath_state_is_a_fixed_point_for_every_interaction_time(
        xi in unit_interval(),
        p in unit_interval(),
    ) {
        let bath = full_thermalization(xi).unwrap();
        let out = gad_closed_form(&bath, &GadParams::new(xi, p).unwrap()).unwrap();
        prop_assert!(out.mat().max_abs_diff(&bath.mat()) <= 1e-12);
    }

    #[test]
    fn consecutive_interactions_compose(
        rho in density_matrix(),
        xi in unit_interval(),
        p1 in unit_interval(),
        p2 in unit_interval(),
    ) {
        let step1 = gad_closed_form(&rho, &GadParams::new(xi, p1).unwrap()).unwrap();
        let step2 = gad_closed_form(&step1, &GadParams::new(xi, p2).unwrap()).unwrap();
        let combined = 1.0 - (1.0 - p1) * (1.0 - p2);
        let direct = gad_closed_form(&rho, &GadParams::new(xi, combined).unwrap()).unwrap();
        prop_assert!(step2.mat().max_abs_diff(&direct.mat()) <= 1e-12);
    }

    #[test]
    fn states_contract_toward_equilibrium(
        rho in density_matrix(),
        xi in unit_interval(),
    ) {
        let bath = full_thermalization(xi).unwrap();
        let mut previous = f64::INFINITY;
        for step in 0..=10 {
            let p = step as f64 / 10.0;
            let out = gad_closed_form(&rho, &GadParams::new(xi, p).unwrap()).unwrap();
            let distance = trace_distance(&out, &bath);
            prop_assert!(distance <= previous + 1e-12);
            previous = distance;
        }
        prop_assert!(previous <= 1e-12, "distance at p = 1 should vanish");
    }

    #[test]
    fn coherences_decay_by_the_square_root_factor(
        rho in density_matrix(),
        xi in unit_interval(),
        p in unit_interval(),
    ) {
        let out = gad_closed_form(&rho, &GadParams::new(xi, p).unwrap()).unwrap();
        let expected = rho.at(0, 1).norm() * (1.0 - p).sqrt();
        prop_assert!((out.at(0, 1).norm() - expected).abs() <= 1e-15);
    }

    #[test]
    fn interferometer_realizes_the_fully_thermalizing_channel(
        rho in density_matrix(),
        theta in 0.0..std::f64::consts::PI,
        phi in 0.0..std::f64::consts::PI,
        pre_dephase in any::<bool>(),
    ) {
        let angles = BathAngles::new(theta, phi).unwrap();
        let optical = pipeline(&rho, &angles, pre_dephase);
        let xi = xi_from_angles(&angles);
        let channel = apply_channel(&kraus_gad(&GadParams::new(xi, 1.0).unwrap()), &rho).unwrap();
        prop_assert!(optical.mat().max_abs_diff(&channel.mat()) <= 1e-12);
    }

    #[test]
    fn pipeline_ignores_the_input_state(
        a in density_matrix(),
        b in density_matrix(),
        theta in -7.0..7.0f64,
        phi in -7.0..7.0f64,
    ) {
        let angles = BathAngles::new(theta, phi).unwrap();
        let out_a = pipeline(&a, &angles, false);
        let out_b = pipeline(&b, &angles, true);
        prop_assert!(trace_distance(&out_a, &out_b) <= 1e-12);
    }

    #[test]
    fn output_ports_conserve_weight(
        theta in -7.0..7.0f64,
        phi in -7.0..7.0f64,
    ) {
        let angles = BathAngles::new(theta, phi).unwrap();
        let ports = second_interferometer(&DensityMatrix::maximally_mixed(), &angles);
        prop_assert!((ports.c_s + ports.c_l - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn thermal_round_trip_holds_for_random_beta(
        beta in -50.0..50.0f64,
    ) {
        let spec = ThermalSpec::with_unit_gap(beta).unwrap();
        let pops = Populations::from_state(&thermal_state(&spec));
        let back = inverse_temperature(&pops, 1.0).unwrap();
        prop_assert!((back - beta).abs() <= 1e-10);
    }

    #[test]
    fn state_json_round_trips(rho in density_matrix()) {
        let text = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, rho);
    }
}
