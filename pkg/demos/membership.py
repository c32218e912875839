"""Tour of the built-in filters and their membership tests.

Each filter is a fixed language; the decision procedures elsewhere in the
package answer emptiness questions against these languages, so it pays to
see a few concrete members and non-members first.
"""

from rrkit import parse_filter_name

SAMPLES = {
    "dyck1": [
        ("a1", "abar1"),
        ("a1", "a1", "abar1", "abar1"),
        ("abar1", "a1"),
    ],
    "dyck2": [
        ("a1", "a2", "abar2", "abar1"),
        ("a1", "a2", "abar1", "abar2"),
    ],
    "sym": [
        ("x1", "x2", "xbar2", "xbar1"),
        ("x1", "x2", "xbar1", "xbar2"),
    ],
    "symsharp": [
        ("#", "x1", "xbar1"),
        ("x1", "xbar1", "#"),
    ],
}


def main():
    for name, words in SAMPLES.items():
        f = parse_filter_name(name)
        print(f"{name}  (alphabet: {' '.join(f.alphabet)})")
        for w in words:
            verdict = "member" if f.contains(w) else "not a member"
            print(f"  {' '.join(w) or 'eps':30s} {verdict}")
        print()


if __name__ == "__main__":
    main()
