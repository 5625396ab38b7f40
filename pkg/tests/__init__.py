"""pbeauville Tests Package"""
