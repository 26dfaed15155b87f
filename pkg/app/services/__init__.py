"""Analysis services"""
