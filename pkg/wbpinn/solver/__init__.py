"""Numerical solvers, training and the experiment harness"""
