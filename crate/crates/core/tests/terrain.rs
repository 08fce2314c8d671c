use swarmnav_core::terrain::{
    extremal_pair, generate_grid, haversine_m, load_scenario, parse_osm_subset, save_scenario,
    shortest_flight_plan, Scenario, TerrainError,
};

const CAMPUS: &[u8] = include_bytes!("fixtures/campus.osm");

fn grid_scenario(rows: u32, cols: u32, spacing: f64) -> Scenario {
    let graph = generate_grid(rows, cols, spacing).unwrap();
    let (s, t) = extremal_pair(&graph).unwrap();
    let plan = shortest_flight_plan(&graph, s, t).unwrap();
    Scenario::new(format!("grid-{rows}x{cols}"), graph, plan.path().to_vec()).unwrap()
}

#[test]
fn lattice_counts() {
    for (n, vertices, edges) in [(10, 100, 180), (25, 625, 1200)] {
        let g = generate_grid(n, n, 25.0).unwrap();
        assert_eq!(g.vertex_count(), vertices);
        assert_eq!(g.edge_count(), edges);
        assert!(g.is_connected());
    }
}

#[test]
fn corner_plan_lengths() {
    let s = grid_scenario(10, 10, 50.0);
    assert_eq!(s.plan.source(), 0);
    assert_eq!(s.plan.terminal(), 99);
    assert_eq!(s.plan.segments(), 18);
    assert_eq!(s.plan_length(), 900.0);

    let s = grid_scenario(2, 2, 1.0);
    assert_eq!(s.plan.segments(), 2);
}

#[test]
fn scenario_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    let original = grid_scenario(10, 10, 37.5);
    save_scenario(&original, &path).unwrap();
    let loaded = load_scenario(&path).unwrap();
    assert_eq!(loaded, original);

    // Saving the reloaded scenario reproduces the file byte for byte.
    let again = dir.path().join("again.json");
    save_scenario(&loaded, &again).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn osm_fixture_matches_its_documentation() {
    let g = parse_osm_subset(CAMPUS).unwrap();
    let ids: Vec<i64> = g.vertices().iter().map(|v| v.id).collect();
    assert_eq!(ids, vec![101, 102, 103, 104, 105]);
    assert_eq!(g.edge_count(), 4);
    assert!(g.is_connected());
    assert!(!g.contains(900));
    for (a, b) in [(101, 102), (102, 103), (103, 104), (104, 105)] {
        assert!(g.edge_length(a, b).is_some(), "missing {a}-{b}");
    }
    assert_eq!(g.degree(103), 2);

    let north = g.edge_length(103, 104).unwrap();
    let expected = haversine_m(45.3830, -75.6960, 45.3840, -75.6960);
    assert_eq!(north, expected);
    assert!((north - 111.2).abs() < 0.1);
    g.validate().unwrap();

    let (s, t) = extremal_pair(&g).unwrap();
    assert_eq!((s, t), (101, 105));
    let plan = shortest_flight_plan(&g, s, t).unwrap();
    assert_eq!(plan.path(), &[101, 102, 103, 104, 105]);
}

#[test]
fn osm_parse_is_deterministic() {
    let a = parse_osm_subset(CAMPUS).unwrap();
    let b = parse_osm_subset(CAMPUS).unwrap();
    assert_eq!(a, b);
}

#[test]
fn osm_scenario_survives_json() {
    let g = parse_osm_subset(CAMPUS).unwrap();
    let s = Scenario::new("campus", g, vec![101, 102, 103, 104, 105]).unwrap();
    let back = Scenario::from_json(s.to_json().as_bytes()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn unreachable_pair_is_reported() {
    let doc = br#"<osm>
  <node id="1" lat="0" lon="0"/><node id="2" lat="0" lon="0.001"/>
  <node id="3" lat="1" lon="0"/><node id="4" lat="1" lon="0.001"/>
  <way id="1"><nd ref="1"/><nd ref="2"/></way>
  <way id="2"><nd ref="3"/><nd ref="4"/></way>
</osm>"#;
    let g = parse_osm_subset(doc).unwrap();
    assert!(!g.is_connected());
    assert_eq!(
        shortest_flight_plan(&g, 1, 4),
        Err(TerrainError::Unreachable { from: 1, to: 4 })
    );
}
