"""
Constants, configuration values and the embedded dataset corpus
"""
