"""Print the verdict of every problem variant for a few reference signatures."""
from matchkit.dichotomy import ProblemVariant, decide, verify
from matchkit.io import parse_inline_signature

REFERENCE = ["[1,0,0,1]", "[1,0,2]", "[0,1,1,0]", "[1,0,w]", "[1,0,1,0]", "[1,1,-1]"]
VARIANTS = [("CSP", None), ("RD_CSP", 3), ("PL_CSP", None), ("PL_RD_CSP", 3), ("CSP_PL", None), ("RD_CSP_PL", 3)]


def main():
    print("signature".ljust(12) + "".join(k.ljust(14) for k, _ in VARIANTS))
    for text in REFERENCE:
        f = parse_inline_signature(text)
        cells = []
        for kind, D in VARIANTS:
            d = decide([f], ProblemVariant(kind, D))
            assert verify([f], d)
            cells.append(f"poly({d.cls})" if d.outcome == "poly" else "#P-hard")
        print(text.ljust(12) + "".join(c.ljust(14) for c in cells))


if __name__ == "__main__":
    main()
