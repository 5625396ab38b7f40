"""
Verification suites
Each suite checks one claim about the families and returns a SuiteResult
"""
