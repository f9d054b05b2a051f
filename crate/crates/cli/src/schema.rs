//! JSON schemas of the `--format json` outputs, plus CSV column lists.

use serde_json::{json, Value};

fn numbers() -> Value {
    json!({"type": "array", "items": {"type": "number"}})
}

pub fn schemas() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "exit_codes": {"0": "success", "1": "i/o failure", "2": "invalid input", "3": "numerical failure"},
        "error": {
            "type": "object",
            "required": ["error", "kind", "exit_code"],
            "properties": {
                "error": {"type": "string"},
                "kind": {"enum": ["validation", "numerical", "io"]},
                "exit_code": {"type": "integer"}
            }
        },
        "commands": {
            "spectrum": {
                "csv_columns": ["n", "eigenvalue", "truncation_estimate"],
                "json": {
                    "type": "object",
                    "required": ["alpha", "beta", "backend", "resolution", "eigenvalues"],
                    "properties": {
                        "alpha": {"type": "number"},
                        "beta": {"type": "number"},
                        "backend": {"enum": ["galerkin", "pseudospectral"]},
                        "resolution": {"type": "integer"},
                        "eigenvalues": numbers(),
                        "truncation_estimate": {"type": ["array", "null"], "items": {"type": "number"}}
                    }
                }
            },
            "wkb-table": {
                "csv_columns": ["n", "reference", "wkb_closed_form", "bohr_sommerfeld"],
                "csv_scale": "kappa/2",
                "json": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n", "kappa_closed_form", "kappa_bohr_sommerfeld"],
                        "properties": {
                            "n": {"type": "integer"},
                            "kappa_closed_form": {"type": "number"},
                            "kappa_bohr_sommerfeld": {"type": "number"},
                            "reference": {"type": ["number", "null"]}
                        }
                    }
                }
            },
            "eigenfunction": {
                "csv_columns": ["u", "x", "psi_numerical", "psi_semiclassical"],
                "json": {
                    "type": "object",
                    "required": ["alpha", "beta", "n", "eigenvalue", "overlap", "u", "x", "psi_numerical", "psi_semiclassical"],
                    "properties": {
                        "alpha": {"type": "number"},
                        "beta": {"type": "number"},
                        "n": {"type": "integer"},
                        "eigenvalue": {"type": "number"},
                        "overlap": {"type": "number"},
                        "u": numbers(),
                        "x": numbers(),
                        "psi_numerical": numbers(),
                        "psi_semiclassical": numbers()
                    }
                }
            },
            "mehler-fock": {
                "csv_columns": ["k", "c"],
                "json": {
                    "type": "object",
                    "required": ["k", "c", "k_max", "t_max", "abel_nodes", "theta_nodes", "tail_estimate"],
                    "properties": {
                        "k": numbers(),
                        "c": numbers(),
                        "k_max": {"type": "number"},
                        "t_max": {"type": "number"},
                        "abel_nodes": {"type": "integer"},
                        "theta_nodes": {"type": "integer"},
                        "tail_estimate": {"type": "number"}
                    }
                }
            },
            "evolve": {
                "csv_header_line": "# {\"tau\": number, \"solver\": {\"backend\", \"resolution\", \"warnings\"}}",
                "csv_columns": ["xi", "u"],
                "json": {
                    "type": "object",
                    "required": ["tau", "xi_grid", "u_values"],
                    "properties": {
                        "tau": {"type": "number"},
                        "xi_grid": numbers(),
                        "u_values": numbers(),
                        "solver": {
                            "type": "object",
                            "properties": {
                                "backend": {"enum": ["matrix", "legendre", "spectral"]},
                                "resolution": {"type": "integer"},
                                "warnings": {"type": "array", "items": {"type": "string"}}
                            }
                        }
                    }
                }
            },
            "table1": {
                "csv_columns": ["n", "numerical_22", "wkb_22", "harmonic", "wkb_11"],
                "csv_scale": "kappa/2",
                "json": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n", "numerical_22", "wkb_22", "harmonic", "wkb_11"],
                        "properties": {
                            "n": {"type": "integer"},
                            "numerical_22": {"type": "number"},
                            "wkb_22": {"type": "number"},
                            "harmonic": {"type": "number"},
                            "wkb_11": {"type": "number"}
                        }
                    }
                }
            },
            "boundary-fit": {
                "csv_columns": ["n", "d_fitted", "d_exact", "samples"],
                "json": {
                    "type": "object",
                    "required": ["alpha", "beta", "n", "d_fitted", "d_exact", "samples"],
                    "properties": {
                        "alpha": {"type": "number"},
                        "beta": {"type": "number"},
                        "n": {"type": "integer"},
                        "d_fitted": {"type": "number"},
                        "d_exact": {"type": "number"},
                        "samples": {"type": "integer"}
                    }
                }
            }
        }
    })
}
