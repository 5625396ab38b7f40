"""Power-conjugate presentations, collection and characteristic subgroups"""
