"""Shared PASS/FAIL reporting for the script-style tests."""


def report_cases(title, cases):
    """Print one line per (label, result, expected) case and assert that none failed."""
    print(f"\n{title}")
    print("-" * 70)
    passed = 0
    failed = 0
    for label, result, expected in cases:
        ok = result == expected
        status = "✓ PASS" if ok else "✗ FAIL"
        print(f"{status} | {label} → {result!r} | Expected: {expected!r}")
        if ok:
            passed += 1
        else:
            failed += 1
    print("-" * 70)
    print(f"Test Results: {passed} passed, {failed} failed")
    assert failed == 0, f"{failed} case(s) failed in {title}"


def raises(fn, exc_type):
    """True when calling fn() raises exc_type."""
    try:
        fn()
    except exc_type:
        return True
    return False


def run_tests(banner, tests):
    print("=" * 70)
    print(banner)
    print("=" * 70)

    results = []
    for test in tests:
        try:
            test()
            results.append(True)
        except AssertionError as e:
            print(f"✗ FAIL | {test.__name__}: {e}")
            results.append(False)

    print("\n" + "=" * 70)
    if all(results):
        print("🎉 ALL TESTS PASSED!")
    else:
        print("❌ SOME TESTS FAILED!")
    print("=" * 70)
    return all(results)
