# Validator tests
