use cli_io::{CliError, ModelName, RunConfig};

#[test]
fn empty_file_gives_defaults() {
    let c = RunConfig::parse("").unwrap();
    assert_eq!(c, RunConfig::default());
    assert_eq!(c.rg.rho, 0.01);
    assert_eq!(c.rg.xi, 0.1);
    assert_eq!(c.rg.lambda0, 0.5);
    assert_eq!((c.rg.mn_max, c.rg.l_max), (2, 3));
    assert_eq!(c.model.model, ModelName::Qed);
}

#[test]
fn sections_set_fields() {
    let c = RunConfig::parse(
        "[model-seed]\nmodel = \"nelson\"\np_mag = 0.2\n[flow-driver]\nn_scales = 3\n[verify]\nseed = 9\n[cli-io]\noutput_dir = \"x\"\n",
    )
    .unwrap();
    assert_eq!(c.model.model, ModelName::Nelson);
    assert_eq!(c.model.p_mag, 0.2);
    assert_eq!(c.flow.n_scales, 3);
    assert_eq!(c.verify.seed, 9);
    assert_eq!(c.output.output_dir, std::path::PathBuf::from("x"));
    assert_eq!(c.flow_config().model.p_mag, 0.2);
}

#[test]
fn momentum_above_one_third_is_rejected() {
    let e = RunConfig::parse("[model-seed]\np_mag = 0.4\n").unwrap_err();
    let CliError::Constraint { key, message } = &e else { panic!("{e}") };
    assert_eq!(key, "model-seed.p_mag");
    assert!(message.contains("|p| < 1/3"), "{message}");
}

#[test]
fn xi_outside_unit_interval_is_rejected() {
    let e = RunConfig::parse("[rg-map]\nxi = 1.5\n").unwrap_err();
    let CliError::Constraint { key, message } = &e else { panic!("{e}") };
    assert_eq!(key, "rg-map.xi");
    assert!(message.contains("(0, 1)"), "{message}");
}

#[test]
fn unsupported_truncation_is_rejected() {
    let e = RunConfig::parse("[rg-map]\nmn_max = 3\n").unwrap_err();
    assert!(e.to_string().contains("MN_max"), "{e}");
}

#[test]
fn parse_errors_name_line_and_key() {
    let e = RunConfig::parse("[rg-map]\nrho = 0.01\nbogus = 1\n").unwrap_err();
    let msg = e.to_string();
    assert!(matches!(e, CliError::Parse(_)));
    assert!(msg.contains("line 3") && msg.contains("bogus"), "{msg}");
    let e = RunConfig::parse("[model-seed]\nalpha = \"big\"\n").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
}

#[test]
fn config_survives_serialization() {
    let mut c = RunConfig::default();
    c.flow.n_last = Some(4);
    c.verify.seed = 77;
    let back = RunConfig::parse(&toml::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}
