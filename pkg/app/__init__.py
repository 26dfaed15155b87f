"""Regression analysis for strongly correlated predictors"""

__version__ = "1.0.0"
