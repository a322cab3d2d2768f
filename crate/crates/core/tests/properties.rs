// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use qclone_core::cloner::{machine, reference_states, ANCILLA_WEIGHT, COPY_WEIGHT};
use qclone_core::fidelity::average_fidelity;
use qclone_core::state::{EXACT_TOL, QUADRATURE_TOL};
use qclone_core::synth::{program_truth_table, Cell};
use qclone_core::*;

fn amp(re: f64, im: f64) -> Amplitude {
    Amplitude::new(re, im)
}

fn arb_state(n: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
        })
        .prop_map(|v| {
            PureState::normalized(v.into_iter().map(|(a, b)| amp(a, b)).collect()).unwrap()
        })
}

fn arb_bloch() -> impl Strategy<Value = BlochAngles> {
    (0.0f64..=PI, 0.0f64..TAU).prop_map(|(t, p)| BlochAngles::new(t, p).unwrap())
}

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        4 => (0..n, 1..n, any::<bool>(), any::<bool>()).prop_map(move |(c, off, it, ic)| {
            let mut g = CnotGate::new(c, (c + off) % n).unwrap();
            g.invert_target = it;
            g.invert_control = ic;
            Gate::Cnot(g)
        }),
        1 => (0..n).prop_map(|target| Gate::Not { target }),
    ]
}

fn arb_program(n: usize) -> impl Strategy<Value = CnotProgram> {
    prop::collection::vec(arb_gate(n), 0..12).prop_map(CnotProgram::from_gates)
}

fn arb_invertible(n: usize) -> impl Strategy<Value = LinearMap> {
    (prop::collection::vec(0usize..1 << n, n), 0usize..1 << n)
        .prop_map(move |(rows, affine)| LinearMap::new(n, rows, affine).unwrap())
        .prop_filter("invertible", LinearMap::is_invertible)
}

fn variant_of(upper: bool) -> Variant {
    if upper {
        Variant::Upper
    } else {
        Variant::Lower
    }
}

proptest! {
    // state vectors and reduced states

    #[test]
    fn gates_preserve_norm(psi in arb_state(3), prog in arb_program(3), theta in -PI..PI, q in 0usize..3) {
        let out = apply_program(&psi, &prog).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() <= EXACT_TOL);
        let out = apply_rotation(&out, q, &Rotation::from_angle(theta)).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() <= EXACT_TOL);
    }

    #[test]
    fn partial_trace_of_product(a in arb_state(1), b in arb_state(2)) {
        let rho = density_of(&tensor(&a, &b).unwrap());
        let left = partial_trace(&rho, &[0]).unwrap();
        let right = partial_trace(&rho, &[1, 2]).unwrap();
        prop_assert!(left.max_abs_diff(&density_of(&a)).unwrap() <= EXACT_TOL);
        prop_assert!(right.max_abs_diff(&density_of(&b)).unwrap() <= EXACT_TOL);
    }

    #[test]
    fn fidelities_with_orthogonal_pair_sum_to_trace(psi in arb_state(1), other in arb_state(1), w in 0.0f64..=1.0) {
        let rho = DensityMatrix::convex_mix(&density_of(&other), &density_of(&psi), w).unwrap();
        let perp = orthogonal_state(&psi).unwrap();
        prop_assert!(psi.inner(&perp).unwrap().norm() < EXACT_TOL);
        let sum = state_fidelity(&rho, &psi).unwrap() + state_fidelity(&rho, &perp).unwrap();
        prop_assert!((sum - rho.trace().re).abs() <= EXACT_TOL);
        prop_assert!((sum - 1.0).abs() <= EXACT_TOL);
    }

    // gates

    #[test]
    fn cnot_is_an_involution(psi in arb_state(3), gate in arb_gate(3)) {
        let Gate::Cnot(mut g) = gate else { return Ok(()) };
        // a persistent control negation makes the gate an order-four element
        g.invert_control = false;
        let back = apply_cnot(&apply_cnot(&psi, &g).unwrap(), &g).unwrap();
        let diff = back.amplitudes().iter().zip(psi.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-15);
    }

    #[test]
    fn rotation_inverse(psi in arb_state(2), theta in -PI..PI, q in 0usize..2) {
        let r = Rotation::from_angle(theta);
        let there = apply_rotation(&psi, q, &r).unwrap();
        let back = apply_rotation(&there, q, &Rotation::from_angle(-theta)).unwrap();
        prop_assert!(back.phase_aligned_deviation(&psi).unwrap() <= EXACT_TOL);
        prop_assert!((back.inner(&psi).unwrap() - amp(1.0, 0.0)).norm() <= EXACT_TOL);
    }

    #[test]
    fn programs_permute_basis_states(prog in arb_program(4)) {
        let mut images = Vec::new();
        for k in 0..16 {
            let out = apply_program(&PureState::basis(4, k).unwrap(), &prog).unwrap();
            let hits: Vec<usize> = (0..16).filter(|&j| out.amplitude(j).norm() > 0.0).collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert_eq!(out.amplitude(hits[0]), amp(1.0, 0.0));
            images.push(hits[0]);
        }
        images.sort_unstable();
        prop_assert_eq!(images, (0..16).collect::<Vec<_>>());
    }

    // preparation solver

    #[test]
    fn solver_round_trip(t1 in -PI..PI, t2 in -PI..PI, t3 in -PI..PI) {
        let original = AngleTriple::from_angles([t1, t2, t3]);
        let c = eval_prep_equations(&original);
        let norm: f64 = c.values().iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() <= EXACT_TOL);
        let prep = prepare_state(&original);
        for (a, v) in prep.amplitudes().iter().zip(c.values()) {
            prop_assert!((a - amp(v, 0.0)).norm() <= EXACT_TOL);
        }
        let sols = solve_angles(&c).unwrap();
        prop_assert!(!sols.is_empty());
        for s in &sols {
            prop_assert!(residual(s, &c) <= 1e-9);
        }
        let found = sols.iter().any(|s| {
            let same_cos2 = s.cos_squared().iter().zip(original.cos_squared()).all(|(a, b)| (a - b).abs() <= 1e-6);
            same_cos2 && eval_prep_equations(s).max_abs_diff(&c) <= 1e-9
        });
        prop_assert!(found, "original angles not among {} solutions", sols.len());
    }

    // synthesis

    #[test]
    fn anf_reproduces_column(bits in prop::collection::vec(any::<bool>(), 32)) {
        let p = AnfPolynomial::from_bits(&bits);
        prop_assert_eq!(p.to_bits(), bits);
    }

    #[test]
    fn program_maps_are_affine(prog in arb_program(4)) {
        let table = program_truth_table(&prog, 4).unwrap();
        for j in 0..4 {
            prop_assert!(anf_of(&table.column(j)).unwrap().is_affine());
        }
    }

    #[test]
    fn completions_respect_fixed_cells(
        m in arb_invertible(3),
        holes in prop::collection::vec(any::<bool>(), 24),
    ) {
        let full = m.to_truth_table();
        let rows: Vec<Vec<Cell>> = full
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().enumerate().map(|(j, c)| if holes[r * 3 + j] && r % 3 == 0 { None } else { *c }).collect())
            .collect();
        let partial = TruthTable::new(3, rows).unwrap();
        let comps = enumerate_completions(&partial);
        prop_assert!(comps.iter().any(|c| c.table == full));
        for c in &comps {
            prop_assert!(c.map.is_invertible());
            prop_assert!(partial.is_refined_by(&c.table));
            prop_assert_eq!(&c.map.to_truth_table(), &c.table);
        }
    }

    // cloner

    #[test]
    fn clones_are_symmetric_and_mixed(angles in arb_bloch(), row in 1usize..=12, upper in any::<bool>()) {
        let psi = bloch_state(&angles);
        let r = run_machine(&psi, row, variant_of(upper)).unwrap();
        prop_assert!((r.output.norm_sqr() - 1.0).abs() <= EXACT_TOL);
        prop_assert!(r.rho0.max_abs_diff(&r.rho1).unwrap() <= EXACT_TOL);
        let (rin, rperp) = reference_states(&psi).unwrap();
        prop_assert!(mixture_residual(&r.rho0, &rin, &rperp, COPY_WEIGHT).unwrap() <= EXACT_TOL);
        let ancilla = mixture_residual(&r.rho2, &rin.conjugate(), &rperp.conjugate(), ANCILLA_WEIGHT).unwrap();
        prop_assert!(ancilla <= EXACT_TOL);
    }

    #[test]
    fn machine_is_linear(a in arb_bloch(), re in -1.0f64..1.0, im in -1.0f64..1.0, row in 1usize..=12, upper in any::<bool>()) {
        let m = machine(row, variant_of(upper)).unwrap();
        let psi_a = bloch_state(&a);
        let psi_b = orthogonal_state(&psi_a).unwrap();
        let x = amp(re, im);
        let y = amp(0.6, -0.3);
        let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
        prop_assume!(norm > 1e-3);
        let (x, y) = (x / norm, y / norm);
        let combo: Vec<Amplitude> = psi_a.amplitudes().iter().zip(psi_b.amplitudes()).map(|(p, q)| x * p + y * q).collect();
        let out = m.output_state(&PureState::from_amplitudes(combo).unwrap()).unwrap();
        let out_a = m.output_state(&psi_a).unwrap();
        let out_b = m.output_state(&psi_b).unwrap();
        for k in 0..8 {
            let want = x * out_a.amplitude(k) + y * out_b.amplitude(k);
            prop_assert!((out.amplitude(k) - want).norm() <= EXACT_TOL);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn synthesized_programs_verify(m in (4usize..=6).prop_flat_map(arb_invertible)) {
        let n = m.n();
        let prog = synthesize(&m).unwrap();
        prop_assert!(verify_program(&prog, &m.to_truth_table()));
        prop_assert!(prog.cnot_count() <= n * n);
        let nots = prog.gates().iter().filter(|g| matches!(g, Gate::Not { .. })).count();
        prop_assert!(prog.inversion_count() <= n && nots <= n);
    }
}

#[test]
fn constant_mixture_averages_to_its_weight() {
    for lambda in [0.0, 1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0, 1.0] {
        let avg = average_fidelity(
            |angles| {
                let psi = bloch_state(angles);
                let (rin, rperp) = reference_states(&psi).unwrap();
                DensityMatrix::convex_mix(&rin, &rperp, lambda).unwrap()
            },
            16,
            16,
        );
        assert!(
            (avg - lambda).abs() < QUADRATURE_TOL,
            "lambda={lambda}: {avg}"
        );
    }
}
