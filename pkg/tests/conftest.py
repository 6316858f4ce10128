import pytest

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE = {}


def naive_fixed(p, e, n):
    """Fixed points with the tower exponent computed exactly (no reduction)."""
    m = p**e
    upper = m if p == 2 else m * (p - 1)
    return [x for x in range(1, upper + 1) if x % p and pow(x, x**n, m) == x % m]


def naive_two_cycles(p, e, n):
    m = p**e
    upper = m if p == 2 else m * (p - 1)
    units = [x for x in range(1, upper + 1) if x % p]
    image = {x: pow(x, x**n, m) for x in units}
    return [(x, y) for x in units for y in units if image[x] == y % m and image[y] == x % m]


@pytest.fixture
def record_criterion():
    def record(number, passed, detail=""):
        ACCEPTANCE[number] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
