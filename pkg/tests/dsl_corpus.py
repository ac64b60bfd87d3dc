"""Shared DSL corpora: well-formed specs for round-trip checks and malformed
inputs that must produce positioned errors."""

ROUNDTRIP = [
    "period: [1/4];",
    "period: [-1/4];",
    "period: [1];",
    "period:[0.3];",
    "period: [1, 2, 3];",
    "period: [i, -i];",
    "period: [1/2 + i/3, -2];",
    "list: [1, 2, 3, 4];",
    "list: [1/2, -3/7, 5];",
    "list: [sqrt(2), 3];",
    "even: -36/23; odd: 1/23;",
    "odd: 4*(n+1); even: 25*n;",
    "even: 25*n + 30; odd: 4;",
    "even: 14; odd: 2;",
    "even: n^2 + 1; odd: 1/(n+1);",
    "even: -2^2; odd: (-2)^2;",
    "even: 2^-1; odd: 3^2^2;",
    "even: sqrt(2)*n; odd: 1;",
    "even: abs(-3 + 4*i); odd: i*n + 1;",
    "even: -(n + 1)*(n - 1/2) + 2; odd: 1 - n/(n + 2);",
    "period: [1]; b: 2;",
    "period: [-3]; b: 4;",
    "list: [1, 1, 1]; b: n + 1; b0: 5;",
    "even: 100; odd: 1/2; b0: -1/3;",
    "even: 1.5e2; odd: 2.5E-3;",
    "even: ((n)); odd: (((1)));",
    "even: 1 - -1; odd: 2 * -3;",
    "even: n/2/3; odd: n - 2 - 30;",
    "even: sqrt(-4) + n; odd: abs(n - 10) + 1;",
    "period: [0.25, -1/8, 3/16];\nb: 1;\nb0: 0;",
]

# (text, expected line, expected column)
MALFORMED = [
    ("", 1, 1),
    ("@", 1, 1),
    ("period: [1/4]", 1, 14),
    ("period: [];", 1, 10),
    ("period: [1,];", 1, 12),
    ("even: 1 odd: 2;", 1, 9),
    ("even: (1; odd: 2;", 1, 9),
    ("even: 1); odd: 2;", 1, 8),
    ("odd: 1;\neven: 2 +;", 2, 10),
    ("banana: 3;", 1, 1),
    ("even 1; odd: 2;", 1, 6),
    ("even: sqrt 2; odd: 1;", 1, 12),
    ("even: 1/; odd: 1;", 1, 9),
    ("list: 1, 2;", 1, 8),
    ("even: 1; odd: 2; even: 3;", 1, 18),
    ("list: [1]; period: [2];", 1, 12),
    ("even: 1;", 1, 1),
    ("b0: n; period: [1];", 1, 1),
    ("even: 1.2.3; odd: 1;", 1, 10),
    ("period: [1/4]; ;", 1, 16),
    ("even: n ^ ; odd: 1;", 1, 11),
    ("\n\n   even: $;", 3, 10),
]
