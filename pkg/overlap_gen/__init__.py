'''Additive generator pairs of overlap functions'''
