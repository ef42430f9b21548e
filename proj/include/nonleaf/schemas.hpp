#pragma once

namespace nonleaf::schemas {

// JSON Schemas for the on-disk formats. The copies under schemas/ are the
// shipped reference files; unit tests keep them in sync with these strings.

inline constexpr const char* kManifestSchema = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "nonleaf manifest",
  "type": "object",
  "required": ["catalog"],
  "additionalProperties": false,
  "properties": {
    "catalog": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "blocks": {"type": "array", "items": {"$ref": "#/definitions/block"}},
        "family": {"$ref": "#/definitions/family"}
      }
    },
    "pattern": {"$ref": "#/definitions/pattern"},
    "options": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "sample_depth": {"type": "integer", "minimum": 1},
        "validate_duality": {"type": "boolean"},
        "seed": {"type": "integer", "minimum": 0},
        "truncation_cap": {"type": "integer", "minimum": 1},
        "oracle": {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "enumeration_cap": {"$ref": "#/definitions/bigint"},
            "max_tree_vertices": {"type": "integer", "minimum": 1},
            "max_matrix_dim": {"type": "integer", "minimum": 1},
            "max_entry": {"type": "integer", "minimum": 1}
          }
        }
      }
    }
  },
  "definitions": {
    "bigint": {"oneOf": [{"type": "integer"}, {"type": "string"}]},
    "count": {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "string"}]},
    "prime_power_entry": {
      "type": "array",
      "minItems": 3,
      "maxItems": 3,
      "items": {"$ref": "#/definitions/bigint"}
    },
    "block": {
      "oneOf": [
        {
          "type": "object",
          "required": ["preset", "p"],
          "additionalProperties": false,
          "properties": {
            "preset": {"enum": ["lens"]},
            "name": {"type": "string"},
            "p": {"$ref": "#/definitions/bigint"},
            "q": {"$ref": "#/definitions/bigint"}
          }
        },
        {
          "type": "object",
          "required": ["preset", "group"],
          "additionalProperties": false,
          "properties": {
            "preset": {"enum": ["smale"]},
            "name": {"type": "string"},
            "group": {
              "oneOf": [
                {
                  "type": "object",
                  "required": ["cyclic"],
                  "additionalProperties": false,
                  "properties": {"cyclic": {"$ref": "#/definitions/bigint"}}
                },
                {
                  "type": "object",
                  "required": ["torsion"],
                  "additionalProperties": false,
                  "properties": {
                    "torsion": {"type": "array", "items": {"$ref": "#/definitions/prime_power_entry"}}
                  }
                }
              ]
            }
          }
        },
        {
          "type": "object",
          "required": ["preset", "d", "prime_power"],
          "additionalProperties": false,
          "properties": {
            "preset": {"enum": ["suspension"]},
            "name": {"type": "string"},
            "d": {"type": "integer"},
            "k": {"type": "integer"},
            "prime_power": {
              "type": "array",
              "minItems": 2,
              "maxItems": 2,
              "items": {"$ref": "#/definitions/bigint"}
            }
          }
        },
        {
          "type": "object",
          "required": ["preset", "d"],
          "additionalProperties": false,
          "properties": {
            "preset": {"enum": ["sphere"]},
            "name": {"type": "string"},
            "d": {"type": "integer"}
          }
        },
        {
          "type": "object",
          "required": ["name", "dim"],
          "additionalProperties": false,
          "properties": {
            "name": {"type": "string"},
            "dim": {"type": "integer", "minimum": 3},
            "pi1": {"type": "array", "items": {"$ref": "#/definitions/factor"}},
            "homology": {
              "type": "object",
              "additionalProperties": {
                "type": "object",
                "additionalProperties": false,
                "properties": {
                  "rank": {"type": "integer", "minimum": 0},
                  "torsion": {"type": "array", "items": {"$ref": "#/definitions/prime_power_entry"}}
                }
              }
            },
            "orientable": {"type": "boolean"},
            "prime": {"type": "boolean"}
          }
        }
      ]
    },
    "factor": {
      "oneOf": [
        {
          "type": "object",
          "required": ["kind"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["infinite_cyclic"]},
            "count": {"type": "integer", "minimum": 1}
          }
        },
        {
          "type": "object",
          "required": ["kind", "n"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["finite_cyclic"]},
            "n": {"$ref": "#/definitions/bigint"},
            "count": {"type": "integer", "minimum": 1}
          }
        },
        {
          "type": "object",
          "required": ["kind", "name", "odd_torsion_generated"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["opaque"]},
            "name": {"type": "string"},
            "odd_torsion_generated": {"type": "boolean"},
            "count": {"type": "integer", "minimum": 1}
          }
        }
      ]
    },
    "family": {
      "type": "object",
      "required": ["name", "preset", "primes"],
      "additionalProperties": false,
      "properties": {
        "name": {"type": "string"},
        "preset": {"enum": ["lens", "smale", "suspension"]},
        "d": {"type": "integer"},
        "k": {"type": "integer"},
        "exponent": {"type": "integer", "minimum": 1},
        "primes": {
          "oneOf": [
            {"enum": ["odd_ascending"]},
            {"type": "array", "items": {"$ref": "#/definitions/bigint"}}
          ]
        },
        "guarantees": {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "distinct": {"type": "boolean"},
            "all_odd": {"type": "boolean"},
            "finite_nonzero_usage": {"type": "boolean"}
          }
        }
      }
    },
    "assignment": {
      "oneOf": [
        {
          "type": "object",
          "required": ["rule", "blocks"],
          "additionalProperties": false,
          "properties": {
            "rule": {"enum": ["cycle"]},
            "blocks": {"type": "array", "minItems": 1, "items": {"type": "string"}},
            "prefix": {"type": "array", "items": {"type": "string"}}
          }
        },
        {
          "type": "object",
          "required": ["rule", "family", "counts"],
          "additionalProperties": false,
          "properties": {
            "rule": {"enum": ["family_counts"]},
            "family": {"type": "string"},
            "counts": {
              "oneOf": [
                {"enum": ["index"]},
                {
                  "type": "object",
                  "required": ["list"],
                  "additionalProperties": false,
                  "properties": {
                    "list": {"type": "array", "items": {"$ref": "#/definitions/count"}},
                    "then": {"enum": ["index", "end"]}
                  }
                }
              ]
            },
            "prefix": {"type": "array", "items": {"type": "string"}}
          }
        }
      ]
    },
    "pattern": {
      "oneOf": [
        {
          "type": "object",
          "required": ["kind", "vertices", "edges"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["finite"]},
            "vertices": {"type": "array", "minItems": 1, "items": {"type": "string"}},
            "edges": {
              "type": "array",
              "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer", "minimum": 0}
              }
            }
          }
        },
        {
          "type": "object",
          "required": ["kind", "family", "counts"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["path_counts"]},
            "family": {"type": "string"},
            "counts": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}
          }
        },
        {
          "type": "object",
          "required": ["kind", "assignment"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["ray", "binary_tree", "comb"]},
            "assignment": {"$ref": "#/definitions/assignment"},
            "usage": {"type": "object", "additionalProperties": {"$ref": "#/definitions/count"}}
          }
        },
        {
          "type": "object",
          "required": ["kind", "offsets", "assignment"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["parent_table"]},
            "offsets": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
            "assignment": {"$ref": "#/definitions/assignment"},
            "usage": {"type": "object", "additionalProperties": {"$ref": "#/definitions/count"}}
          }
        }
      ]
    }
  }
})JSON";

inline constexpr const char* kCertificateSchema = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "nonleaf certificate document",
  "type": "object",
  "required": ["format", "tool_version", "manifest_digest", "seed", "timestamp", "certificate"],
  "additionalProperties": false,
  "properties": {
    "format": {"enum": ["nonleaf-certificate/1"]},
    "tool_version": {"type": "string"},
    "manifest_digest": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "timestamp": {"type": ["string", "null"]},
    "certificate": {
      "type": "object",
      "required": ["theorem", "manifold", "status", "conclusion", "hypotheses", "assumptions",
                   "model_limitations"],
      "additionalProperties": false,
      "properties": {
        "theorem": {"enum": ["A", "B-via-4.2", "C"]},
        "manifold": {"type": "string"},
        "status": {"enum": ["certified", "refuted", "undecidable-at-depth"]},
        "conclusion": {"type": "string"},
        "hypotheses": {"type": "array", "items": {"$ref": "#/definitions/verdict"}},
        "assumptions": {"type": "array", "items": {"type": "string"}},
        "model_limitations": {"type": "array", "items": {"type": "string"}}
      }
    }
  },
  "definitions": {
    "verdict": {
      "type": "object",
      "required": ["check", "status", "detail", "witnesses", "assumptions"],
      "additionalProperties": false,
      "properties": {
        "check": {"type": "string"},
        "status": {"enum": ["certified", "refuted", "undecidable-at-depth"]},
        "detail": {"type": "string"},
        "witnesses": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["kind", "fields"],
            "additionalProperties": false,
            "properties": {
              "kind": {"type": "string"},
              "fields": {
                "type": "array",
                "items": {
                  "type": "array",
                  "minItems": 2,
                  "maxItems": 2,
                  "items": {"type": "string"}
                }
              }
            }
          }
        },
        "assumptions": {"type": "array", "items": {"type": "string"}}
      }
    }
  }
})JSON";

inline constexpr const char* kReportSchema = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "nonleaf oracle report document",
  "type": "object",
  "required": ["format", "tool_version", "manifest_digest", "seed", "timestamp", "reports"],
  "additionalProperties": false,
  "properties": {
    "format": {"enum": ["nonleaf-report/1"]},
    "tool_version": {"type": "string"},
    "manifest_digest": {"type": ["string", "null"]},
    "seed": {"type": "integer", "minimum": 0},
    "timestamp": {"type": ["string", "null"]},
    "reports": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["check", "instance", "expected", "computed", "pass", "seed"],
        "additionalProperties": false,
        "properties": {
          "check": {"type": "string"},
          "instance": {"type": "string"},
          "expected": {"type": "string"},
          "computed": {"type": "string"},
          "pass": {"type": "boolean"},
          "seed": {"type": "integer", "minimum": 0}
        }
      }
    }
  }
})JSON";

}  // namespace nonleaf::schemas
