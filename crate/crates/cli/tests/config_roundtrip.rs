use proptest::prelude::*;
use ptlattice::parse_config;

fn ray() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("\"tau_z\"".to_string()),
        Just("\"identity\"".to_string()),
        (0.0f64..2.0, -1.0f64..1.0).prop_map(|(s, x)| format!("{{ s = {s:?}, x = {x:?} }}")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_config_parses_back(
        n in 4usize..60,
        site in 0usize..30,
        t_s in 0.1f64..3.0,
        ratio in 0.0f64..1.0,
        gamma in 0.0f64..2.0,
        periodic in any::<bool>(),
        parabolic in any::<bool>(),
        command in 0usize..4,
        ray in ray(),
        workers in 1usize..8,
    ) {
        let m = 1 + site % (n / 2);
        let command = ["spectrum", "threshold", "verify", "phase-diagram"][command];
        let site_line = if command == "phase-diagram" { format!("m_range = [1, {m}]") } else { format!("m = {m}") };
        let text = format!(
            "command = \"{command}\"\nN = {n}\n{site_line}\nboundary = \"{}\"\nprofile = \"{}\"\nt_s = {t_s:?}\nt0 = {t_s:?}\nt_d = {:?}\ngamma = {gamma:?}\nray = {ray}\nworkers = {workers}\n",
            if periodic { "periodic" } else { "open" },
            if parabolic { "parabolic-sqrt" } else { "constant" },
            t_s * ratio,
        );
        let job = parse_config(&text).unwrap();
        let printed = job.to_toml();
        prop_assert_eq!(parse_config(&printed).unwrap(), job.clone(), "{}", printed);
    }
}
